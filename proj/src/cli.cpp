#include "primearcs/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "primearcs/ergodic.hpp"
#include "primearcs/hits.hpp"
#include "primearcs/json_io.hpp"
#include "primearcs/primes.hpp"
#include "primearcs/sieve_lab.hpp"

namespace primearcs::cli {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Rational require_c(const RunConfig& cfg) {
    if (!cfg.c) throw std::invalid_argument("c is required (--c num/den)");
    Rational c;
    try {
        c = Rational::parse(*cfg.c);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("c must be in (0,1/2]");
    }
    require_valid_c(c);
    return c;
}

NumeratorSequence require_sequence(const RunConfig& cfg) {
    if (!cfg.seq_path) throw std::invalid_argument("--seq FILE is required");
    return load_sequence(*cfg.seq_path);
}

RealApproximant require_x(const RunConfig& cfg) {
    if (cfg.x_named) {
        Rational eta = Rational::parse(cfg.eta.value_or("1e-14"));
        return named_real(*cfg.x_named, eta);
    }
    if (!cfg.x) throw std::invalid_argument("--x or --x-named is required");
    RealApproximant r = exact_real(Rational::parse(*cfg.x));
    if (cfg.eta) r.error_bound = Rational::parse(*cfg.eta);
    if (r.error_bound.sign() < 0) throw std::invalid_argument("eta must be >= 0");
    return r;
}

void require_range(const RunConfig& cfg) {
    if (cfg.range_hi <= cfg.range_lo) throw std::invalid_argument("range requires X < Y");
}

OutFormat format_or(const RunConfig& cfg, OutFormat fallback) { return cfg.format.value_or(fallback); }

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

void run_primes(const RunConfig& cfg, std::ostream& os) {
    if (cfg.bound < 2) throw std::invalid_argument("bound must be >= 2");
    if (format_or(cfg, OutFormat::json) == OutFormat::csv) {
        if (cfg.list) {
            os << "p\n";
            for_each_prime(2, cfg.bound, [&](std::uint64_t p) { os << p << '\n'; });
        } else {
            os << "bound,pi\n" << cfg.bound << ',' << count_primes(cfg.bound) << '\n';
        }
        return;
    }
    json j;
    j["bound"] = cfg.bound;
    if (cfg.list) {
        auto table = sieve_range(cfg.bound);
        j["pi"] = table.size();
        j["primes"] = std::vector<std::uint64_t>(table.primes().begin(), table.primes().end());
    } else {
        j["pi"] = count_primes(cfg.bound);
    }
    emit_json(os, j);
}

void run_seq(const RunConfig& cfg, std::ostream& os) {
    Rational c = require_c(cfg);
    if (cfg.bound < 2) throw std::invalid_argument("bound must be >= 2");
    Method m = parse_method(cfg.method);
    std::optional<BlockResult> blocks;
    std::optional<NumeratorSequence> seq;
    switch (m) {
        case Method::random: seq = random_sequence(cfg.bound, c, cfg.seed); break;
        case Method::greedy: seq = greedy_sequence(cfg.bound, c); break;
        case Method::constant: seq = constant_sequence(cfg.bound, c); break;
        case Method::blocks: {
            std::vector<Rational> eps;
            for (const auto& e : cfg.epsilons) eps.push_back(Rational::parse(e));
            if (eps.empty()) throw std::invalid_argument("--epsilons is required for method blocks");
            blocks = block_construction(eps, c, cfg.bound);
            seq = blocks->sequence;
            break;
        }
        case Method::custom: throw std::invalid_argument("method custom cannot be built from the command line");
    }
    json j = to_json(*seq);
    if (blocks) j["blocks"] = to_json(blocks->schedule);
    os << j.dump() << '\n';
}

void run_coverage(const RunConfig& cfg, std::ostream& os) {
    auto seq = require_sequence(cfg);
    require_range(cfg);
    auto arcs = seq.arcs_in(cfg.range_lo, cfg.range_hi);
    ArcUnion covered = normalize_union(arcs);
    Rational covered_measure = measure(covered);
    Rational uncovered = Rational(1) - covered_measure;
    if (format_or(cfg, OutFormat::json) == OutFormat::csv) {
        os << "x,y,covered,uncovered\n"
           << cfg.range_lo << ',' << cfg.range_hi << ',' << covered_measure << ',' << uncovered << '\n';
        return;
    }
    json j;
    j["x"] = cfg.range_lo;
    j["y"] = cfg.range_hi;
    j["c"] = to_json(seq.c());
    j["covered"] = to_json(covered_measure);
    j["uncovered"] = to_json(uncovered);
    if (cfg.with_arcs) j["covered_union"] = to_json(covered);
    emit_json(os, j);
}

void run_sievelab(const RunConfig& cfg, std::ostream& os) {
    require_range(cfg);
    std::optional<NumeratorSequence> seq;
    if (cfg.seq_path) seq = load_sequence(*cfg.seq_path);
    Rational c;
    if (cfg.c) {
        c = require_c(cfg);
        if (seq && seq->c() != c) throw std::invalid_argument("--c conflicts with the sequence file's c");
    } else if (seq) {
        c = seq->c();
    } else {
        throw std::invalid_argument("c is required (--c num/den) when no sequence is given");
    }
    if (!seq && !cfg.exact && !cfg.trials)
        throw std::invalid_argument("nothing to do: give --seq, --exact or --mc");

    std::vector<std::pair<std::string, std::string>> flat;  // for CSV
    json j;
    j["range"] = json::array({cfg.range_lo, cfg.range_hi});
    j["c"] = to_json(c);
    if (seq) {
        SieveReport report = alpha_and_markov(level_sets(*seq, cfg.range_lo, cfg.range_hi));
        j["report"] = to_json(report);
        flat.emplace_back("nu", report.profile.nu.str());
        for (std::size_t k = 0; k < report.profile.levels.size(); ++k)
            flat.emplace_back("level_" + std::to_string(k), report.profile.levels[k].str());
        flat.emplace_back("alpha", report.alpha.str());
        flat.emplace_back("omega_measure", report.omega_measure.str());
        flat.emplace_back("markov_bound", report.markov_bound ? report.markov_bound->str() : "inf");
    }
    if (cfg.exact) {
        Rational e = omega_expectation_exact(cfg.range_lo, cfg.range_hi, c);
        j["expectation_exact"] = to_json(e);
        flat.emplace_back("expectation_exact", e.str());
    }
    if (cfg.trials) {
        auto mc = omega_expectation_mc(cfg.range_lo, cfg.range_hi, c, *cfg.trials, cfg.seed);
        j["monte_carlo"] = to_json(mc);
        flat.emplace_back("mc_mean", fmt_double(mc.mean));
        flat.emplace_back("mc_stderr", fmt_double(mc.standard_error));
        flat.emplace_back("mc_trials", std::to_string(mc.trials));
        flat.emplace_back("mc_seed", std::to_string(mc.seed));
    }
    if (format_or(cfg, OutFormat::json) == OutFormat::csv) {
        os << "quantity,value\n";
        for (const auto& [k, v] : flat) os << k << ',' << v << '\n';
        return;
    }
    emit_json(os, j);
}

void emit_hits(const RunConfig& cfg, const RealApproximant& x, const HitReport& r, std::ostream& os) {
    if (format_or(cfg, OutFormat::json) == OutFormat::csv) {
        os << "p,distance_num,distance_den,hit,ambiguous\n";
        for (const auto& row : r.rows)
            os << row.p << ',' << row.distance.numerator().get_str() << ',' << row.distance.denominator().get_str()
               << ',' << (row.hit ? 1 : 0) << ',' << (row.ambiguous ? 1 : 0) << '\n';
        return;
    }
    json j;
    j["x"] = {{"label", x.label}, {"value", to_json(x.value)}, {"error_bound", to_json(x.error_bound)}};
    j.update(to_json(r, cfg.list));
    emit_json(os, j);
}

void run_hits(const RunConfig& cfg, std::ostream& os) {
    auto seq = require_sequence(cfg);
    if (cfg.bound < 2) throw std::invalid_argument("bound must be >= 2");
    auto x = require_x(cfg);
    emit_hits(cfg, x, hit_primes(x, seq, cfg.bound), os);
}

void run_fracparts(const RunConfig& cfg, std::ostream& os) {
    Rational c = require_c(cfg);
    if (cfg.bound < 2) throw std::invalid_argument("bound must be >= 2");
    auto x = require_x(cfg);
    emit_hits(cfg, x, fractional_hits(x, c, cfg.bound), os);
}

void run_ergodic(const RunConfig& cfg, std::ostream& os) {
    auto seq = require_sequence(cfg);
    if (cfg.bound < 2) throw std::invalid_argument("--primes-up-to must be >= 2");
    std::vector<std::uint64_t> primes;
    if (!cfg.sparse) {
        const auto table = sieve_range(cfg.bound);
        primes.assign(table.primes().begin(), table.primes().end());
    } else if (*cfg.sparse == "geometric") {
        primes = sparse_geometric(cfg.bound).primes;
    } else if (cfg.sparse->rfind("psi:", 0) == 0) {
        primes = sparse_psi(cfg.bound, cfg.sparse->substr(4)).primes;
    } else {
        throw std::invalid_argument("unknown --sparse mode '" + *cfg.sparse + "'");
    }
    auto samples = convergence_series(seq, cfg.ergodic_x, cfg.ergodic_y, primes);
    if (format_or(cfg, OutFormat::csv) == OutFormat::json) {
        json arr = json::array();
        for (const auto& s : samples)
            arr.push_back({{"p", s.p}, {"a_p", s.a}, {"d", s.distance}, {"abs_s", std::abs(s.s)},
                           {"re_s", s.s.real()}, {"im_s", s.s.imag()}, {"is_hit", s.is_hit},
                           {"method", std::string(to_string(s.method))}});
        emit_json(os, arr);
        return;
    }
    os << "p,a_p,d,abs_s,is_hit,method\n";
    for (const auto& s : samples)
        os << s.p << ',' << s.a << ',' << fmt_double(s.distance) << ',' << fmt_double(std::abs(s.s)) << ','
           << (s.is_hit ? 1 : 0) << ',' << to_string(s.method) << '\n';
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ostringstream buf;
    try {
        switch (cfg.subcommand) {
            case Subcommand::primes: run_primes(cfg, buf); break;
            case Subcommand::seq: run_seq(cfg, buf); break;
            case Subcommand::coverage: run_coverage(cfg, buf); break;
            case Subcommand::sievelab: run_sievelab(cfg, buf); break;
            case Subcommand::hits: run_hits(cfg, buf); break;
            case Subcommand::fracparts: run_fracparts(cfg, buf); break;
            case Subcommand::ergodic: run_ergodic(cfg, buf); break;
        }
        if (cfg.out_path) {
            std::ofstream f(*cfg.out_path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + cfg.out_path->string());
            f << buf.str();
        } else {
            out << buf.str();
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chosen-numerator rational approximation experiments"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format;
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "write the report to FILE instead of stdout");
    };
    auto add_c = [&](CLI::App* sub) { sub->add_option("--c", cfg.c, "radius constant, num/den in (0,1/2]"); };
    auto add_x = [&](CLI::App* sub) {
        sub->add_option("--x", cfg.x, "exact rational x, e.g. 1/3");
        sub->add_option("--x-named", cfg.x_named, "sqrt2 or golden");
        sub->add_option("--eta", cfg.eta, "error bound of x (default 1e-14 for named reals)");
    };

    auto* primes = app.add_subcommand("primes", "count (and optionally list) primes");
    primes->add_option("--bound", cfg.bound)->required();
    primes->add_flag("--list", cfg.list);
    add_format(primes);

    auto* seq = app.add_subcommand("seq", "numerator sequences");
    seq->require_subcommand(1);
    auto* build = seq->add_subcommand("build", "construct a sequence");
    build->add_option("--method", cfg.method)->check(CLI::IsMember({"random", "greedy", "blocks", "constant"}));
    build->add_option("--bound", cfg.bound, "largest prime (max_bound for blocks)")->required();
    add_c(build);
    build->add_option("--seed", cfg.seed);
    build->add_option("--epsilons", cfg.epsilons, "block targets, e.g. 1/2,1/4")->delimiter(',');
    build->add_option("--out", cfg.out_path);

    auto* coverage = app.add_subcommand("coverage", "uncovered measure over (X, Y]");
    coverage->add_option("--seq", cfg.seq_path)->required();
    coverage->add_option("--x", cfg.range_lo)->required();
    coverage->add_option("--y", cfg.range_hi)->required();
    coverage->add_flag("--arcs", cfg.with_arcs, "include the covered arc union");
    add_format(coverage);

    auto* sievelab = app.add_subcommand("sievelab", "level sets, Markov bound and expected uncovered measure over (X, Y]");
    sievelab->add_option("--seq", cfg.seq_path);
    sievelab->add_option("--x", cfg.range_lo)->required();
    sievelab->add_option("--y", cfg.range_hi)->required();
    add_c(sievelab);
    sievelab->add_flag("--exact", cfg.exact, "exact expectation over random sequences");
    sievelab->add_option("--mc", cfg.trials, "Monte-Carlo trials");
    sievelab->add_option("--seed", cfg.seed);
    add_format(sievelab);

    auto* hits = app.add_subcommand("hits", "hit primes |x - a_p/p| <= c/p");
    hits->add_option("--seq", cfg.seq_path)->required();
    add_x(hits);
    hits->add_option("--bound", cfg.bound)->required();
    hits->add_flag("--rows", cfg.list, "include per-prime rows in JSON");
    add_format(hits);

    auto* frac = app.add_subcommand("fracparts", "primes with {x p} < c");
    add_x(frac);
    add_c(frac);
    frac->add_option("--bound", cfg.bound)->required();
    frac->add_flag("--rows", cfg.list, "include per-prime rows in JSON");
    add_format(frac);

    auto* ergodic = app.add_subcommand("ergodic", "twisted averages s_p(x, y)");
    ergodic->add_option("--seq", cfg.seq_path)->required();
    ergodic->add_option("--x", cfg.ergodic_x)->required();
    ergodic->add_option("--y", cfg.ergodic_y)->required();
    ergodic->add_option("--primes-up-to", cfg.bound)->required();
    ergodic->add_option("--sparse", cfg.sparse, "geometric or psi:log|loglog|sqrtlog");
    add_format(ergodic);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        for (auto& ch : msg)
            if (ch == '\n') ch = ' ';
        err << "error: " << msg << '\n';
        return 2;
    }

    if (*primes) cfg.subcommand = Subcommand::primes;
    else if (*seq) cfg.subcommand = Subcommand::seq;
    else if (*coverage) cfg.subcommand = Subcommand::coverage;
    else if (*sievelab) cfg.subcommand = Subcommand::sievelab;
    else if (*hits) cfg.subcommand = Subcommand::hits;
    else if (*frac) cfg.subcommand = Subcommand::fracparts;
    else cfg.subcommand = Subcommand::ergodic;
    if (!format.empty()) cfg.format = format == "csv" ? OutFormat::csv : OutFormat::json;
    return run(cfg, out, err);
}

}  // namespace primearcs::cli
