// Command-line surface: atom enumeration, consolidated invariants reports,
// per-element analysis, and the verification suites.
//
// Exit codes: 0 success, 1 usage/input error, 2 resource cap exceeded,
// 3 verification mismatch.

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockmon/report.hpp"

namespace bm = blockmon;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void emit(const bm::json& root, const std::string& format) {
    if (format == "json") {
        std::cout << root.dump(2) << "\n";
    } else {
        // flat key: value rendering of the report subtree
        std::function<void(const bm::json&, std::string)> walk = [&](const bm::json& j,
                                                                     std::string prefix) {
            if (j.is_object()) {
                for (auto it = j.begin(); it != j.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
            } else if (j.is_array()) {
                std::cout << std::left << std::setw(34) << prefix << " " << j.dump() << "\n";
            } else {
                std::cout << std::left << std::setw(34) << prefix << " " << j.dump() << "\n";
            }
        };
        walk(root.at("report"), "");
    }
}

bm::AtomSet atoms_with_cache(const bm::SubsetSpec& subset, const bm::RunConfig& cfg,
                             std::string* cache_note) {
    std::string dir = cfg.cache_dir.empty() ? bm::default_cache_dir() : cfg.cache_dir;
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        std::filesystem::path file = std::filesystem::path(dir) / bm::cache_file_name(subset);
        if (std::filesystem::exists(file)) {
            try {
                bm::AtomSet set = bm::load_cache(subset, file.string());
                if (cache_note) *cache_note = "loaded " + file.string();
                return set;
            } catch (const bm::input_error& e) {
                if (cache_note) *cache_note = std::string("cache rejected: ") + e.what();
            }
        }
        bm::AtomSet set = bm::enumerate_atoms(subset, cfg.bundle_options().enumeration);
        bm::save_cache(set, file.string());
        if (cache_note && cache_note->empty()) *cache_note = "wrote " + file.string();
        return set;
    }
    return bm::enumerate_atoms(subset, cfg.bundle_options().enumeration);
}

int cmd_atoms(const bm::RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    bm::Group g = bm::parse_group_literal(cfg.group_literal);
    bm::SubsetSpec subset = bm::parse_subset(g, cfg.subset_literal);
    std::string cache_note;
    bm::AtomSet set = atoms_with_cache(subset, cfg, &cache_note);

    bm::json rep;
    rep["group"] = bm::group_json(cfg.group_literal, g);
    rep["subset"] = subset.label();
    rep["atom_count"] = set.atoms.size();
    rep["davenport"] = set.davenport;
    bm::json hist;
    for (long long l = 1; l <= set.davenport; ++l)
        if (!set.of_length(l).empty())
            hist[std::to_string(l)] = set.of_length(l).size();
    rep["length_histogram"] = hist;
    bm::json root = bm::wrap_report(std::move(rep), ms_since(t0));
    if (!cache_note.empty()) root["meta"]["cache"] = cache_note;
    emit(root, cfg.format);
    return 0;
}

int cmd_invariants(const bm::RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    bm::Group g = bm::parse_group_literal(cfg.group_literal);
    bm::SubsetSpec subset = bm::parse_subset(g, cfg.subset_literal);
    auto bundle = bm::make_bundle(subset, cfg.bundle_options());

    bm::DeltaScan ds = bm::empirical_delta(bundle->atoms, bundle->stabilizer, cfg.scan_cap,
                                           cfg.bundle_options().scan);
    std::optional<long long> maxd;
    if (!ds.values.empty()) maxd = ds.values.back();
    bm::Certificate cert =
        bm::certify_catenary(bundle->atoms, bundle->pairs.daleth, bundle->pairs.c2, maxd);

    bm::json rep;
    rep["group"] = bm::group_json(cfg.group_literal, g);
    rep["subset"] = subset.label();
    rep["atom_count"] = bundle->atoms.atoms.size();
    rep["davenport"] = bundle->atoms.davenport;
    rep["daleth"] = bm::daleth_json(bundle->pairs.daleth);
    rep["c2"] = bm::c2_json(bundle->pairs.c2);
    rep["certificate"] = bm::certificate_json(cert);
    auto bracket = bm::lemma_3_6_bracket(cert.status == bm::Certificate::Status::certified
                                             ? cert.value
                                             : bundle->pairs.c2.value);
    bm::json br;
    br["lower"] = bracket.first;
    br["upper"] = bracket.second;
    br["exact_for_block_monoid"] = cert.status == bm::Certificate::Status::certified;
    if (g.order() <= 2)
        br["note"] = "for |G| <= 2 a non-factorial Krull monoid with these classes has c = 2";
    rep["krull_bracket"] = br;
    rep["thm42_bound"] =
        bm::theorem_4_2_bound(bundle->atoms.davenport, bundle->pairs.daleth.value);
    if (g.order() >= 2) {
        bm::Theorem54Bounds t54 = bm::theorem_5_4_bound(g, bundle->atoms.davenport);
        bm::json t;
        t["tight"] = t54.tight.text();
        t["relaxed"] = t54.relaxed.text();
        rep["thm54_bounds"] = t;
    }
    rep["empirical_delta"] = bm::delta_scan_json(ds);
    if (cfg.ck > 0) {
        bm::CkScan ck = bm::empirical_ck(bundle->atoms, bundle->stabilizer, cfg.ck, cfg.ck_cap,
                                         cfg.bundle_options().scan);
        rep["empirical_ck"] = bm::ck_scan_json(ck);
    }
    rep["classification"] = bm::catenary_class_text(bm::corollary_5_6_classify(g));
    emit(bm::wrap_report(std::move(rep), ms_since(t0)), cfg.format);
    return 0;
}

int cmd_element(const bm::RunConfig& cfg, const std::string& literal) {
    auto t0 = std::chrono::steady_clock::now();
    bm::Group g = bm::parse_group_literal(cfg.group_literal);
    bm::Sequence A = bm::parse_sequence(g, literal);
    bm::FactorizationOptions fopt;
    fopt.element_size_cap = cfg.element_size_cap;
    bm::ChainAnalysis ca = bm::catenary_of_element(A, fopt);

    bm::json rep;
    rep["group"] = bm::group_json(cfg.group_literal, g);
    rep["analysis"] = bm::chain_analysis_json(ca);
    auto zs = bm::enumerate_factorizations(A, fopt);
    const std::size_t listing_cap = 50;
    bm::json listing = bm::json::array();
    for (std::size_t i = 0; i < zs.size() && i < listing_cap; ++i) {
        bm::json z = bm::json::array();
        for (const auto& a : zs[i].atoms) z.push_back(a.text());
        listing.push_back(z);
    }
    rep["factorizations"] = listing;
    rep["factorizations_truncated"] = zs.size() > listing_cap;
    emit(bm::wrap_report(std::move(rep), ms_since(t0)), cfg.format);
    return 0;
}

int cmd_verify(const bm::RunConfig& cfg, const std::string& suite) {
    auto t0 = std::chrono::steady_clock::now();
    bm::BundleOptions opt = cfg.bundle_options();
    bm::SuiteResult res;
    if (suite == "prop5.5")
        res = bm::verify_prop_5_5(opt);
    else if (suite == "cor5.6")
        res = bm::verify_cor_5_6(opt);
    else if (suite == "lemma5.7")
        res = bm::verify_lemma_5_7_suite(opt);
    else if (suite == "properties")
        res = bm::verify_properties(cfg.seed, 1000, opt);
    else
        throw bm::input_error("unknown suite \"" + suite +
                              "\" (expected prop5.5, cor5.6, lemma5.7 or properties)");

    if (cfg.format == "json") {
        bm::json root = bm::wrap_report(bm::suite_json(res), ms_since(t0));
        root["meta"]["suite_wall_ms"] = res.wall_ms;
        std::cout << root.dump(2) << "\n";
    } else {
        for (const auto& c : res.checks)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                      << (c.detail.empty() ? "" : "  -- " + c.detail) << "\n";
        std::cout << (res.pass() ? "PASS " : "FAIL ") << res.suite << " ("
                  << static_cast<long long>(res.wall_ms) << " ms)\n";
    }
    return res.pass() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmetic invariants of block monoids over finite abelian groups"};
    app.require_subcommand(1);

    bm::RunConfig cfg;
    std::string element_literal;
    std::string suite;

    auto add_common = [&](CLI::App* sub, bool needs_group) {
        auto* gopt = sub->add_option("--group", cfg.group_literal,
                                     "invariant factors, e.g. 3,3,3 (trivial group: 1)");
        if (needs_group) gopt->required();
        sub->add_option("--subset", cfg.subset_literal,
                        "all | nonzero | @file | inline element list");
        sub->add_option("--cap", cfg.enumeration_cap, "group-order cap for enumeration");
        sub->add_option("--element-cap", cfg.element_size_cap,
                        "length cap for factorization enumeration");
        sub->add_option("--scan-cap", cfg.scan_cap, "size cap for the Delta scan");
        sub->add_option("--ck", cfg.ck, "include an empirical c_k scan for this k");
        sub->add_option("--ck-cap", cfg.ck_cap, "size cap for the c_k scan");
        sub->add_option("--workers", cfg.workers, "worker threads (0 = auto)");
        sub->add_option("--cache-dir", cfg.cache_dir,
                        "atom cache directory (default: $BLOCKMON_CACHE_DIR)");
        sub->add_option("--format", cfg.format, "json | table")
            ->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized suites");
        sub->add_option("--time-budget", cfg.time_budget_seconds,
                        "abort long computations after this many seconds");
    };

    auto* atoms = app.add_subcommand("atoms", "enumerate A(G_0) and report D(G_0)");
    add_common(atoms, true);
    auto* invariants =
        app.add_subcommand("invariants", "daleth, c_2, certificates and bounds for B(G_0)");
    add_common(invariants, true);
    auto* element = app.add_subcommand("element", "factorizations and catenary of one element");
    add_common(element, true);
    element->add_option("literal", element_literal, "sequence literal, e.g. \"(1,0)^2*(2,1)\"")
        ->required();
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, false);
    verify->add_option("suite", suite, "prop5.5 | cor5.6 | lemma5.7 | properties")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (atoms->parsed()) return cmd_atoms(cfg);
        if (invariants->parsed()) return cmd_invariants(cfg);
        if (element->parsed()) return cmd_element(cfg, element_literal);
        if (verify->parsed()) return cmd_verify(cfg, suite);
    } catch (const bm::cap_exceeded& e) {
        std::cerr << "error (cap): " << e.what() << "\n";
        return 2;
    } catch (const bm::input_error& e) {
        std::cerr << "error (input): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
