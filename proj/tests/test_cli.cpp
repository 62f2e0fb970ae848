#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

std::string cli_path() {
    const char* env = std::getenv("BLOCKMON_CLI");
    REQUIRE(env != nullptr);
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json report_of(const std::string& out) {
    auto j = nlohmann::json::parse(out);
    return j.at("report");
}

} // namespace

TEST_CASE("atoms command") {
    auto r = run("atoms --group 3,3 --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = report_of(r.out);
    CHECK(rep.at("davenport") == 5);
    CHECK(rep.at("atom_count") == 69);
    CHECK(rep.at("group").at("normalized") == "3,3");

    auto r1 = run("atoms --group 1 --format json");
    REQUIRE(r1.exit_code == 0);
    auto rep1 = report_of(r1.out);
    CHECK(rep1.at("davenport") == 1);
    CHECK(rep1.at("atom_count") == 1);
}

TEST_CASE("invariants command") {
    auto r = run("invariants --group 2,4 --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = report_of(r.out);
    CHECK(rep.at("davenport") == 5);
    CHECK(rep.at("daleth").at("value") == 4);
    CHECK(rep.at("c2").at("value") == 4);
    CHECK(rep.at("certificate").at("status") == "certified");
    CHECK(rep.at("certificate").at("value") == 4);
    CHECK(rep.at("classification") == "4");
    CHECK(rep.at("thm42_bound") == 4);
    CHECK(rep.contains("thm54_bounds"));
    CHECK(rep.contains("empirical_delta"));
}

TEST_CASE("the order-2 group: factorial block monoid with the Krull-side note") {
    auto r = run("invariants --group 2 --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = report_of(r.out);
    CHECK(rep.at("certificate").at("status") == "certified");
    CHECK(rep.at("certificate").at("value") == 0);
    CHECK(rep.at("certificate").at("rule") == "factorial");
    CHECK(rep.at("krull_bracket").at("lower") == 0);
    CHECK(rep.at("krull_bracket").at("upper") == 2);
    CHECK(rep.at("krull_bracket").contains("note"));
    CHECK(rep.at("classification") == "<= 2");
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
    auto a = run("invariants --group 3,3 --workers 1 --format json");
    auto b = run("invariants --group 3,3 --workers 3 --format json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(report_of(a.out).dump() == report_of(b.out).dump());
    auto c = run("invariants --group 3,3 --workers 1 --format json");
    CHECK(report_of(a.out).dump() == report_of(c.out).dump());
}

TEST_CASE("element command") {
    auto r = run("element --group 3 \"(1)^3*(2)^3\" --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = report_of(r.out);
    CHECK(rep.at("analysis").at("catenary") == 3);
    CHECK(rep.at("analysis").at("lengths") == nlohmann::json({2, 3}));
    CHECK(rep.at("factorizations").size() == 2);

    auto atom = run("element --group 3 \"(1)*(2)\" --format json");
    REQUIRE(atom.exit_code == 0);
    CHECK(report_of(atom.out).at("analysis").at("catenary") == 0);
}

TEST_CASE("exit codes") {
    CHECK(run("atoms --group 0,3").exit_code == 1);
    CHECK(run("atoms --group abc").exit_code == 1);
    CHECK(run("atoms --group 3,3,3 --cap 9").exit_code == 2);
    CHECK(run("element --group 3 \"(1)\"").exit_code == 1); // not zero-sum
    CHECK(run("verify nosuchsuite").exit_code == 1);
    CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("verify suites run from the CLI") {
    auto r = run("verify prop5.5 --format json --workers 0");
    REQUIRE(r.exit_code == 0);
    auto rep = report_of(r.out);
    CHECK(rep.at("pass") == true);
}

TEST_CASE("subset files and explicit subsets") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "blockmon-cli-test";
    fs::create_directories(dir);
    auto file = dir / "subset.txt";
    {
        std::ofstream out(file);
        out << "# the finitely generated example over 3,3,3\n";
        out << "(2,2,2)\n(1,0,0)\n(0,1,0)\n(0,0,1)\n";
    }
    auto r = run("invariants --group 3,3,3 --subset @" + file.string() + " --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = report_of(r.out);
    CHECK(rep.at("daleth").at("value") == 0);
    CHECK(rep.at("c2").at("value") == 0);
    CHECK(rep.at("certificate").at("status") == "bound-only");
    CHECK(rep.at("atom_count") == 5);
    fs::remove_all(dir);
}

TEST_CASE("atom cache is written and reused") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "blockmon-cli-cache";
    fs::remove_all(dir);
    auto r1 = run("atoms --group 2,4 --cache-dir " + dir.string() + " --format json");
    REQUIRE(r1.exit_code == 0);
    bool wrote = false;
    for (const auto& e : fs::directory_iterator(dir)) wrote |= e.is_regular_file();
    CHECK(wrote);
    auto r2 = run("atoms --group 2,4 --cache-dir " + dir.string() + " --format json");
    REQUIRE(r2.exit_code == 0);
    auto j = nlohmann::json::parse(r2.out);
    CHECK(j.at("meta").at("cache").get<std::string>().rfind("loaded", 0) == 0);
    CHECK(report_of(r1.out).dump() == report_of(r2.out).dump());
    fs::remove_all(dir);
}

TEST_CASE("table format prints flat keys") {
    auto r = run("atoms --group 3,3 --format table");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("davenport") != std::string::npos);
}
