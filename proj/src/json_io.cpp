#include "primearcs/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace primearcs {

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected rational as \"num/den\" string");
    return Rational::parse(j.get<std::string>());
}

json to_json(const ArcUnion& u) {
    json arr = json::array();
    for (const auto& a : u.arcs()) arr.push_back(json::array({to_json(a.left()), to_json(a.length())}));
    return arr;
}

ArcUnion arc_union_from_json(const json& j) {
    std::vector<Arc> arcs;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("arc must be [left, length]");
        arcs.emplace_back(rational_from_json(pair[0]), rational_from_json(pair[1]));
    }
    return normalize_union(arcs);
}

json to_json(const NumeratorSequence& seq) {
    json j;
    j["c"] = to_json(seq.c());
    j["method"] = std::string(to_string(seq.method()));
    j["seed"] = seq.seed() ? json(*seq.seed()) : json(nullptr);
    json entries = json::array();
    for (const auto& e : seq.entries()) entries.push_back(json::array({e.p, e.a}));
    j["entries"] = std::move(entries);
    return j;
}

NumeratorSequence sequence_from_json(const json& j) {
    try {
        Rational c = rational_from_json(j.at("c"));
        Method m = parse_method(j.at("method").get<std::string>());
        std::optional<std::uint64_t> seed;
        if (j.contains("seed") && !j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();
        std::vector<Entry> entries;
        for (const auto& e : j.at("entries")) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("entry must be [p, a]");
            entries.push_back({e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>()});
        }
        return NumeratorSequence(std::move(c), std::move(entries), m, seed);
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed sequence file: ") + ex.what());
    }
}

json to_json(const BlockSchedule& schedule) {
    json arr = json::array();
    for (const auto& b : schedule.blocks) {
        json jb;
        jb["start"] = b.start;
        jb["end"] = b.end;
        jb["epsilon"] = to_json(b.epsilon);
        jb["achieved_uncovered"] = to_json(b.achieved_uncovered);
        arr.push_back(std::move(jb));
    }
    return arr;
}

json to_json(const LevelSetProfile& profile) {
    json j;
    j["range"] = json::array({profile.X, profile.Y});
    j["c"] = to_json(profile.c);
    j["nu"] = to_json(profile.nu);
    json levels = json::object();
    for (std::size_t k = 0; k < profile.levels.size(); ++k) levels[std::to_string(k)] = to_json(profile.levels[k]);
    j["levels"] = std::move(levels);
    return j;
}

json to_json(const SieveReport& report) {
    json j;
    j["profile"] = to_json(report.profile);
    j["alpha"] = to_json(report.alpha);
    j["omega_measure"] = to_json(report.omega_measure);
    j["markov_bound"] = report.markov_bound ? to_json(*report.markov_bound) : json("inf");
    return j;
}

json to_json(const MonteCarloEstimate& mc) {
    json j;
    j["mean"] = mc.mean;
    j["stderr"] = mc.standard_error;
    j["trials"] = mc.trials;
    j["seed"] = mc.seed;
    return j;
}

json to_json(const HitReport& report, bool with_rows) {
    json j;
    j["bound"] = report.bound;
    j["hit_count"] = report.hits.size();
    j["hits"] = report.hits;
    j["ambiguous"] = report.ambiguous;
    j["heuristic"] = report.heuristic;
    j["ratio"] = report.ratio;
    j["hit_reciprocal_sum"] = report.hit_reciprocal_sum;
    if (with_rows) {
        json rows = json::array();
        for (const auto& r : report.rows)
            rows.push_back({{"p", r.p}, {"distance", to_json(r.distance)}, {"hit", r.hit}, {"ambiguous", r.ambiguous}});
        j["rows"] = std::move(rows);
    }
    return j;
}

NumeratorSequence load_sequence(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("sequence file not found");
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed sequence file: ") + ex.what());
    }
    return sequence_from_json(j);
}

void save_sequence(const std::filesystem::path& path, const NumeratorSequence& seq, const BlockSchedule* schedule) {
    json j = to_json(seq);
    if (schedule) j["blocks"] = to_json(*schedule);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump() << '\n';
}

}  // namespace primearcs
