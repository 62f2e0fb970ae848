#pragma once

// Run configuration, input parsing for the CLI surface, and JSON report
// assembly. JSON payloads live under "report" and are byte-identical across
// runs and worker counts for identical configs (keys sorted, no timestamps);
// wall-clock timings go under "meta".

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockmon/atoms.hpp"
#include "blockmon/catenary.hpp"
#include "blockmon/certificates.hpp"
#include "blockmon/errors.hpp"
#include "blockmon/group.hpp"
#include "blockmon/sequence.hpp"
#include "blockmon/verify.hpp"
#include "blockmon/version.hpp"

namespace blockmon {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string group_literal;
    std::string subset_literal = "all"; // all | nonzero | @file
    long long enumeration_cap = 81;
    long long element_size_cap = 40;
    double time_budget_seconds = 0;
    int workers = 0;
    std::string cache_dir; // empty = no cache
    std::string format = "table";
    std::uint64_t seed = 7;
    long long scan_cap = 14;      // size cap for empirical Delta scans
    int ck = 0;                   // include an empirical c_k scan when > 0
    long long ck_cap = 16;

    BundleOptions bundle_options() const {
        BundleOptions b;
        b.enumeration.enumeration_cap = enumeration_cap;
        b.enumeration.workers = workers;
        b.scan.workers = workers;
        b.scan.element_size_cap = element_size_cap;
        b.scan.time_budget_seconds = time_budget_seconds;
        return b;
    }
};

// "3,3,3" or "1" for the trivial group
inline Group parse_group_literal(const std::string& lit) {
    std::string s = detail::strip(lit);
    if (s.empty()) throw input_error("empty group literal");
    if (s == "1") return Group(std::vector<long long>{});
    std::vector<long long> factors;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            factors.push_back(std::stoll(detail::strip(tok)));
        } catch (const std::exception&) {
            throw input_error("bad group literal: " + lit);
        }
    }
    return Group(factors);
}

// subset files: one canonical element per line, '#' comments
inline SubsetSpec parse_subset(const Group& g, const std::string& lit) {
    std::string s = detail::strip(lit);
    if (s.empty() || s == "all") return SubsetSpec::all_of(g);
    if (s == "nonzero") return SubsetSpec::nonzero_of(g);
    if (s[0] == '@') {
        std::ifstream in(s.substr(1));
        if (!in) throw input_error("cannot read subset file " + s.substr(1));
        std::vector<int> idx;
        std::string line;
        while (std::getline(in, line)) {
            std::string t = detail::strip(line);
            if (t.empty() || t[0] == '#') continue;
            idx.push_back(parse_element(g, t));
        }
        if (idx.empty()) throw input_error("subset file " + s.substr(1) + " lists no elements");
        return SubsetSpec::explicit_of(g, std::move(idx));
    }
    // inline element list separated by middle dots or '*'
    std::vector<int> idx;
    for (const auto& part : detail::split_terms(s)) idx.push_back(parse_element(g, part));
    return SubsetSpec::explicit_of(g, std::move(idx));
}

// --- JSON pieces -----------------------------------------------------------

inline json group_json(const std::string& input_literal, const Group& g) {
    json j;
    j["input"] = input_literal;
    j["normalized"] = g.label();
    j["order"] = g.order();
    j["rank"] = g.rank();
    j["exponent"] = g.exponent();
    j["d_star"] = d_star(g);
    j["two_rank"] = two_rank(g);
    return j;
}

inline json lengths_json(const LengthSet& L) { return json(L); }

inline json pair_witness_json(const std::optional<PairWitness>& w) {
    if (!w) return nullptr;
    json j;
    j["u"] = w->u.text();
    j["v"] = w->v.text();
    j["lengths"] = lengths_json(w->lengths);
    return j;
}

inline json daleth_json(const DalethResult& d) {
    json j;
    j["value"] = d.value;
    j["witness"] = pair_witness_json(d.witness);
    j["pairs_examined"] = d.pairs_examined;
    j["reduced"] = d.symmetry_reduced;
    return j;
}

inline json c2_json(const C2Result& c) {
    json j;
    j["value"] = c.value;
    j["witness"] = pair_witness_json(c.witness);
    j["pairs_examined"] = c.pairs_examined;
    j["reduced"] = c.symmetry_reduced;
    return j;
}

inline json certificate_json(const Certificate& c) {
    json j;
    j["claim"] = c.claim;
    j["rule"] = c.rule;
    j["status"] = c.status_text();
    if (c.status == Certificate::Status::certified) j["value"] = c.value;
    if (c.status == Certificate::Status::bound_only) {
        j["lower"] = c.lower;
        j["upper"] = c.upper;
    }
    json prem = json::array();
    for (const auto& p : c.premises) {
        json q;
        q["name"] = p.name;
        q["value"] = p.value;
        q["source"] = p.source;
        prem.push_back(q);
    }
    j["premises"] = prem;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline json chain_analysis_json(const ChainAnalysis& ca, std::size_t listing_cap = 0) {
    json j;
    j["element"] = ca.element.text();
    j["factorization_count"] = ca.factorization_count;
    j["catenary"] = ca.catenary;
    j["lengths"] = lengths_json(ca.lengths);
    j["delta"] = json(delta_set(ca.lengths));
    if (ca.witness_pair) {
        json w = json::array();
        w.push_back(ca.witness_pair->first.text());
        w.push_back(ca.witness_pair->second.text());
        j["witness_pair"] = w;
    } else {
        j["witness_pair"] = nullptr;
    }
    (void)listing_cap;
    return j;
}

inline json delta_scan_json(const DeltaScan& d) {
    json j;
    j["cap"] = d.size_cap;
    j["mode"] = d.mode == DeltaScan::Mode::exhaustive ? "exhaustive" : "atom-pairs";
    j["complete"] = d.complete;
    j["values"] = json(d.values);
    j["witness_max"] = d.witness_max ? json(d.witness_max->text()) : json(nullptr);
    j["elements_examined"] = d.elements_examined;
    return j;
}

inline json ck_scan_json(const CkScan& c) {
    json j;
    j["k"] = c.k;
    j["cap"] = c.size_cap;
    j["lower_bound"] = c.value;
    j["witness"] = c.witness ? json(c.witness->text()) : json(nullptr);
    j["complete"] = c.complete;
    j["products_examined"] = c.products_examined;
    return j;
}

inline json suite_json(const SuiteResult& s) {
    json j;
    j["suite"] = s.suite;
    j["pass"] = s.pass();
    json checks = json::array();
    for (const auto& c : s.checks) {
        json q;
        q["name"] = c.name;
        q["pass"] = c.pass;
        if (!c.detail.empty()) q["detail"] = c.detail;
        checks.push_back(q);
    }
    j["checks"] = checks;
    return j;
}

inline json wrap_report(json payload, double wall_ms) {
    json root;
    json meta;
    meta["tool"] = "blockmon";
    meta["version"] = BLOCKMON_VERSION;
    meta["wall_time_ms"] = wall_ms;
    root["meta"] = meta;
    root["report"] = std::move(payload);
    return root;
}

inline std::string default_cache_dir() {
    const char* env = std::getenv("BLOCKMON_CACHE_DIR");
    return env ? std::string(env) : std::string();
}

inline std::string cache_file_name(const SubsetSpec& subset) {
    std::string g = subset.group.label();
    for (auto& c : g)
        if (c == ',') c = '_';
    detail::Fnv1a h;
    h.feed(subset.label());
    return "atoms-" + g + "-" + h.hex() + ".txt";
}

} // namespace blockmon
