#include "cli_app.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "morsedc/chaos.hpp"
#include "morsedc/constructions.hpp"
#include "morsedc/errors.hpp"
#include "morsedc/oracle.hpp"

namespace morsedc {

namespace {

using ordered_json = nlohmann::ordered_json;

// exact decimal rendering of num/den in [0, ~2], truncated to 9 places
std::string decimal9(uint64_t num, uint64_t den) {
    uint64_t whole = num / den;
    unsigned __int128 frac = (unsigned __int128)(num % den) * 1000000000u / den;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu.%09llu", (unsigned long long)whole,
                  (unsigned long long)uint64_t(frac));
    return buf;
}

std::string lattice_decimal(uint64_t num, int precision) {
    // num / 2^L with L up to 62: print via long double is not exact; use the
    // integer route with a shifted denominator in 128 bits
    unsigned __int128 den = (unsigned __int128)1 << precision;
    unsigned __int128 scaled = (unsigned __int128)num * 1000000000000ull / den;
    uint64_t whole = uint64_t(scaled / 1000000000000ull);
    uint64_t frac = uint64_t(scaled % 1000000000000ull);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%llu.%012llu", (unsigned long long)whole,
                  (unsigned long long)frac);
    return buf;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::vector<uint64_t> parse_checkpoints(const std::string& text) {
    std::vector<uint64_t> cps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            cps.push_back(std::stoull(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad checkpoint '" + item + "'");
        }
    }
    return cps;
}

std::string grid_str(const std::vector<Rational>& grid) {
    std::vector<std::string> parts;
    for (const auto& d : grid) parts.push_back(d.str());
    return join(parts, ",");
}

struct OutputTarget {
    std::string path;  // empty = stdout
    std::ostream& resolve(std::ostream& fallback, std::ofstream& file) {
        if (path.empty()) return fallback;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file " + path);
        return file;
    }
};

// ---------------------------------------------------------------- df ----

void write_df_csv(std::ostream& os, const std::vector<std::string>& descriptors,
                  const std::vector<uint64_t>& checkpoints, const std::vector<Rational>& grid,
                  int precision, const std::vector<std::vector<CountTriple>>& cum_lower,
                  const std::vector<std::vector<CountTriple>>& cum_upper) {
    os << "# morsedc df\n";
    os << "# points: " << join(descriptors, " | ") << "\n";
    os << "# checkpoints: ";
    for (size_t i = 0; i < checkpoints.size(); ++i) os << (i ? "," : "") << checkpoints[i];
    os << "\n# delta-grid: " << grid_str(grid) << "\n";
    os << "# precision: " << precision << "\n";
    os << "delta,m,below,atleast,indeterminate,phi_hat,phi_star_hat\n";
    for (size_t c = 0; c < checkpoints.size(); ++c) {
        uint64_t denom = checkpoints[c] - 1;
        for (size_t d = 0; d < grid.size(); ++d) {
            const CountTriple& lo = cum_lower[c][d];
            const CountTriple& up = cum_upper[c][d];
            os << grid[d].str() << ',' << checkpoints[c] << ',' << lo.below << ',' << lo.at_least
               << ',' << lo.indeterminate << ',' << decimal9(lo.below, denom) << ','
               << decimal9(up.below, denom) << "\n";
        }
    }
}

int cmd_df(const std::vector<std::string>& point_descs, const std::string& checkpoints_text,
           const std::string& grid_text, int precision, int threads, OutputTarget out_target,
           const std::string& format, std::ostream& out) {
    std::vector<SymbolicPoint> points;
    std::vector<std::string> descriptors;
    for (const auto& d : point_descs) {
        points.push_back(parse_descriptor(d));
        descriptors.push_back(points.back().descriptor());
    }
    auto checkpoints = parse_checkpoints(checkpoints_text);
    auto grid = grid_text.empty() ? default_delta_grid() : parse_delta_grid(grid_text);

    auto windows = sweep_tuple(points, checkpoints, grid, precision, threads);
    std::vector<std::vector<CountTriple>> cum_lower(windows.size()), cum_upper(windows.size());
    std::vector<CountTriple> lo(grid.size()), up(grid.size());
    for (size_t w = 0; w < windows.size(); ++w) {
        for (size_t d = 0; d < grid.size(); ++d) {
            lo[d] += windows[w].lower[d];
            up[d] += windows[w].upper[d];
        }
        cum_lower[w] = lo;
        cum_upper[w] = up;
    }

    std::ofstream file;
    std::ostream& os = out_target.resolve(out, file);
    if (format == "csv" || format == "text") {
        write_df_csv(os, descriptors, checkpoints, grid, precision, cum_lower, cum_upper);
    } else if (format == "json") {
        ordered_json j;
        j["command"] = "df";
        j["points"] = descriptors;
        j["checkpoints"] = checkpoints;
        ordered_json grid_j = ordered_json::array();
        for (const auto& d : grid) grid_j.push_back(d.str());
        j["delta_grid"] = grid_j;
        j["precision"] = precision;
        ordered_json rows = ordered_json::array();
        for (size_t c = 0; c < checkpoints.size(); ++c) {
            for (size_t d = 0; d < grid.size(); ++d) {
                ordered_json row;
                row["delta"] = grid[d].str();
                row["m"] = checkpoints[c];
                row["below"] = cum_lower[c][d].below;
                row["atleast"] = cum_lower[c][d].at_least;
                row["indeterminate"] = cum_lower[c][d].indeterminate;
                row["phi_hat"] = decimal9(cum_lower[c][d].below, checkpoints[c] - 1);
                row["phi_star_hat"] = decimal9(cum_upper[c][d].below, checkpoints[c] - 1);
                rows.push_back(row);
            }
        }
        j["rows"] = rows;
        os << j.dump(2) << "\n";
    } else {
        throw CLI::ValidationError("--format", "df supports csv or json");
    }
    return 0;
}

// ---------------------------------------------------------- classify ----

ordered_json verdict_json(const TupleVerdict& v) {
    ordered_json j;
    j["command"] = "classify";
    j["points"] = v.descriptors;
    j["checkpoints"] = v.checkpoints;
    j["precision"] = v.precision;
    j["smallness_threshold"] = v.smallness.str();
    j["positivity_floor"] = v.positivity_floor.str();
    j["classification"] = tuple_class_name(v.classification);
    ordered_json ev;
    ev["liminf_reaches_threshold"] = v.liminf_reaches_threshold;
    ev["tail_spikes_above_floor"] = v.tail_spikes_above_floor;
    ev["tail_stays_below_threshold"] = v.tail_stays_below_threshold;
    ev["positive_floor_exhibited"] = v.positive_floor_exhibited;
    j["evidence"] = ev;
    ordered_json liminf = ordered_json::array();
    for (size_t c = 0; c < v.checkpoints.size(); ++c) {
        ordered_json e;
        e["checkpoint"] = v.checkpoints[c];
        e["min_max_num"] = v.liminf_running_num[c];
        e["min_max_value"] = lattice_decimal(v.liminf_running_num[c], v.precision);
        e["at_k"] = v.liminf_running_at[c];
        liminf.push_back(e);
    }
    j["liminf_max_running"] = liminf;
    ordered_json windows = ordered_json::array();
    for (const auto& w : v.windows) {
        ordered_json e;
        e["k_from"] = w.k_from;
        e["k_to"] = w.k_to;
        e["max_min_num"] = w.max_min_num;
        e["max_min_value"] = lattice_decimal(w.max_min_num, v.precision);
        e["at_k"] = w.max_min_at;
        windows.push_back(e);
    }
    j["limsup_min_windows"] = windows;
    // extremal table: lower-function estimates per delta at each checkpoint
    ordered_json extremal = ordered_json::array();
    for (size_t d = 0; d < v.deltas.size(); ++d) {
        ordered_json e;
        e["delta"] = v.deltas[d].str();
        ordered_json vals = ordered_json::array();
        for (size_t c = 0; c < v.checkpoints.size(); ++c) {
            Rational r = v.phi_hat(c, d);
            vals.push_back(decimal9(r.num, r.den));
        }
        e["phi_hat"] = vals;
        extremal.push_back(e);
    }
    j["extremal_phi_hat"] = extremal;
    return j;
}

int cmd_classify(const std::vector<std::string>& point_descs, const std::string& checkpoints_text,
                 const std::string& grid_text, int precision, const std::string& threshold_text,
                 const std::string& floor_text, int threads, OutputTarget out_target,
                 const std::string& format, std::ostream& out) {
    ClassifyParams params;
    params.checkpoints = parse_checkpoints(checkpoints_text);
    if (!grid_text.empty()) params.delta_grid = parse_delta_grid(grid_text);
    params.precision = precision;
    if (!threshold_text.empty()) params.smallness = Rational::parse(threshold_text);
    if (!floor_text.empty()) params.positivity_floor = Rational::parse(floor_text);
    params.workers = threads;

    std::vector<SymbolicPoint> points;
    for (const auto& d : point_descs) points.push_back(parse_descriptor(d));
    TupleVerdict v = classify_tuple(points, params);

    std::ofstream file;
    std::ostream& os = out_target.resolve(out, file);
    if (format == "json") {
        os << verdict_json(v).dump(2) << "\n";
    } else if (format == "text") {
        os << "# morsedc classify\n# points: " << join(v.descriptors, " | ") << "\n";
        os << "classification: " << tuple_class_name(v.classification) << "\n";
        os << "liminf-max (upper bound) at final checkpoint: "
           << lattice_decimal(v.liminf_running_num.back() + 1, v.precision) << " (at k="
           << v.liminf_running_at.back() << ")\n";
        for (const auto& w : v.windows)
            os << "window [" << w.k_from << "," << w.k_to
               << "] max min-pairwise: " << lattice_decimal(w.max_min_num, v.precision)
               << " (at k=" << w.max_min_at << ")\n";
    } else {
        throw CLI::ValidationError("--format", "classify supports json or text");
    }
    return 0;
}

// --------------------------------------------------------------- gen ----

int cmd_gen(const std::string& desc, uint64_t length, OutputTarget out_target, std::ostream& out) {
    SymbolicPoint p = parse_descriptor(desc);
    Word w = prefix(p, length);
    std::ofstream file;
    std::ostream& os = out_target.resolve(out, file);
    os << "# morsedc gen\n# point: " << p.descriptor() << "\n# length: " << length << "\n";
    os << w.str() << "\n";
    return 0;
}

// ------------------------------------------------------------ verify ----

struct CheckReporter {
    std::ostream& os;
    int failures = 0;

    void report(const std::string& label, bool ok, const std::string& details) {
        os << (ok ? "PASS " : "FAIL ") << label;
        if (!details.empty()) os << " " << details;
        os << "\n";
        if (!ok) ++failures;
    }
};

int cmd_verify_p(uint64_t prefix_len, uint64_t cap, std::ostream& os) {
    CheckReporter rep{os};
    auto res = verify_property_p(prefix_len, cap);
    std::string det = "prefix=" + std::to_string(prefix_len);
    if (res.witness)
        det += " witness=(start " + std::to_string(res.witness->start) + ", |B|=" +
               std::to_string(res.witness->block_len) + ")";
    rep.report("property-p overlap-free-prefix", res.ok, det);
    // live-scanner control: an alternating word must produce a witness
    auto control = verify_property_p_word(Word("01010"));
    rep.report("property-p control-witness", !control.ok, "word=01010");
    os << (rep.failures ? "FAIL" : "PASS") << " property-p suite\n";
    return rep.failures ? 1 : 0;
}

int cmd_verify_lemma1(const std::string& gaps_text, int n_max, uint64_t cap, std::ostream& os) {
    CheckReporter rep{os};
    GapSequence g = GapSequence::parse(gaps_text, true);
    if (n_max <= 0) n_max = g.block_count();
    for (int n = 2; n <= n_max; ++n) {
        auto res = verify_lemma1(g, n, cap);
        std::string det = "n=" + std::to_string(n) + " r_n=" + res.shift_exponent.to_decimal();
        if (res.first_mismatch) det += " mismatch-at=" + std::to_string(*res.first_mismatch);
        rep.report("lemma1 shifted-prefix-identity", res.ok, det);
    }
    os << (rep.failures ? "FAIL" : "PASS") << " lemma1 suite\n";
    return rep.failures ? 1 : 0;
}

int cmd_verify_step2(const std::string& gaps_text, uint64_t r, uint64_t window, uint64_t horizon,
                     std::ostream& os) {
    CheckReporter rep{os};
    GapSequence g = GapSequence::parse(gaps_text, true);
    std::vector<SymbolicPoint> family = {point_lemma1(g), point_theorem1(1, g),
                                         point_theorem1(2, g)};
    uint64_t r_lo = r == 0 ? 1 : r;
    uint64_t r_hi = r == 0 ? 4 : r;
    for (uint64_t rr = r_lo; rr <= r_hi; ++rr) {
        for (const auto& u : family) {
            for (const auto& v : family) {
                auto res = verify_step2_window(u, v, rr, window, horizon);
                std::string det = "r=" + std::to_string(rr) + " window=" +
                                  std::to_string(res.window_len) + " u=\"" + u.descriptor() +
                                  "\" v=\"" + v.descriptor() + "\"";
                if (res.witness_k) det += " shared-window-at-k=" + std::to_string(*res.witness_k);
                rep.report("step2 no-shared-window", res.ok, det);
                auto sweep = shifted_pair_distality(u, v, rr, horizon);
                rep.report("step2 distance-floor",
                           sweep.floor_ok && sweep.applicable,
                           "r=" + std::to_string(rr) + " min=" +
                               lattice_decimal(sweep.min_num, sweep.precision) + " at k=" +
                               std::to_string(sweep.min_at) + " floor=" + sweep.floor.str());
            }
        }
    }
    os << (rep.failures ? "FAIL" : "PASS") << " step2 suite\n";
    return rep.failures ? 1 : 0;
}

int cmd_verify_lemma2(uint64_t n, std::ostream& os) {
    CheckReporter rep{os};
    for (unsigned k = 1; k <= 3; ++k) {
        // betas equal everywhere except coordinate k
        std::vector<uint8_t> b1(k, 0), b2(k, 0);
        b2[k - 1] = 1;
        uint64_t got = alpha_difference_count(AlphaCode(b1), AlphaCode(b2), n);
        uint64_t expect = (n + (uint64_t(1) << (k - 1))) >> k;
        rep.report("lemma2 coding-difference-density", got == expect,
                   "k=" + std::to_string(k) + " N=" + std::to_string(n) + " count=" +
                       std::to_string(got) + " expected=" + std::to_string(expect));
    }
    os << (rep.failures ? "FAIL" : "PASS") << " lemma2 suite\n";
    return rep.failures ? 1 : 0;
}

int cmd_verify_oracle_match(const std::string& gaps_text, const std::string& checkpoints_text,
                            int precision, int threads, std::ostream& os) {
    CheckReporter rep{os};
    GapSequence g = GapSequence::parse(gaps_text, true);
    std::vector<uint64_t> checkpoints;
    if (!checkpoints_text.empty()) {
        checkpoints = parse_checkpoints(checkpoints_text);
    } else {
        for (int j = 1; j <= g.block_count(); ++j) {
            if (!g.boundary(j).fits_u64()) break;
            uint64_t s = g.boundary(j).to_u64();
            uint64_t cap = g.horizon_u64() >= uint64_t(precision)
                               ? g.horizon_u64() - uint64_t(precision)
                               : 0;
            checkpoints.push_back(std::min(s, cap));
        }
        std::sort(checkpoints.begin(), checkpoints.end());
        checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
        while (!checkpoints.empty() && checkpoints.front() < 2)
            checkpoints.erase(checkpoints.begin());
    }
    auto grid = default_delta_grid();
    std::vector<std::pair<uint64_t, uint64_t>> index_pairs = {{1, 2}, {1, 3}, {2, 3}};
    for (auto [i, j] : index_pairs) {
        SymbolicPoint u = point_theorem1(i, g);
        SymbolicPoint v = point_theorem1(j, g);
        for (uint64_t m : checkpoints) {
            auto est = estimate_df({u, v}, grid, m, precision, threads);
            bool all_equal = true;
            for (size_t d = 0; d < grid.size(); ++d) {
                CountTriple oracle = exact_pair_counts(u, v, grid[d], m, precision);
                if (!(oracle == est.lower[d]) || !(oracle == est.upper[d])) all_equal = false;
            }
            rep.report("oracle-match estimator-vs-block-combinatorics", all_equal,
                       "pair=(x^" + std::to_string(i) + ",x^" + std::to_string(j) + ") m=" +
                           std::to_string(m));
        }
    }
    os << (rep.failures ? "FAIL" : "PASS") << " oracle-match suite\n";
    return rep.failures ? 1 : 0;
}

// -------------------------------------------------------------- plot ----

int cmd_plot(const std::string& in_path, const std::string& out_path, std::ostream& err) {
    std::ifstream in(in_path);
    if (!in) {
        err << "plot: cannot open " << in_path << "\n";
        return 2;
    }
    struct Row {
        std::string delta;
        double m, phi, phi_star;
    };
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("delta,", 0) == 0) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7) continue;
        rows.push_back({fields[0], std::stod(fields[1]), std::stod(fields[5]),
                        std::stod(fields[6])});
    }
    if (rows.empty()) {
        err << "plot: no data rows in " << in_path << "\n";
        return 2;
    }
    double m_max = 0;
    for (const auto& r : rows) m_max = std::max(m_max, r.m);
    std::map<std::string, std::vector<const Row*>> by_delta;
    for (const auto& r : rows) by_delta[r.delta].push_back(&r);

    const double W = 900, H = 520, ml = 60, mr = 200, mt = 20, mb = 40;
    auto x_of = [&](double m) { return ml + (W - ml - mr) * (m / m_max); };
    auto y_of = [&](double phi) { return H - mb - (H - mt - mb) * phi; };

    std::ofstream svg(out_path);
    if (!svg) {
        err << "plot: cannot open " << out_path << "\n";
        return 2;
    }
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<line x1='" << ml << "' y1='" << y_of(0) << "' x2='" << W - mr << "' y2='" << y_of(0)
        << "' stroke='black'/>\n";
    svg << "<line x1='" << ml << "' y1='" << y_of(0) << "' x2='" << ml << "' y2='" << y_of(1)
        << "' stroke='black'/>\n";
    svg << "<text x='" << ml - 40 << "' y='" << y_of(1) + 5 << "' font-size='12'>1.0</text>\n";
    svg << "<text x='" << ml - 40 << "' y='" << y_of(0) + 5 << "' font-size='12'>0.0</text>\n";
    svg << "<text x='" << (W - mr + ml) / 2 << "' y='" << H - 8
        << "' font-size='12'>horizon m</text>\n";
    int color_i = 0;
    const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                            "#e6ab02", "#a6761d", "#666666"};
    int y_leg = int(mt) + 12;
    for (const auto& [delta, pts] : by_delta) {
        const char* color = colors[color_i % 8];
        ++color_i;
        for (int star = 0; star < 2; ++star) {
            svg << "<polyline fill='none' stroke='" << color << "'"
                << (star ? " stroke-dasharray='5,3'" : "") << " points='";
            for (const Row* r : pts)
                svg << x_of(r->m) << "," << y_of(star ? r->phi_star : r->phi) << " ";
            svg << "'/>\n";
        }
        svg << "<text x='" << W - mr + 10 << "' y='" << y_leg << "' font-size='11' fill='" << color
            << "'>delta=" << delta << " (solid phi, dashed phi*)</text>\n";
        y_leg += 14;
    }
    svg << "</svg>\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Morse-block symbolic dynamics: scrambled-tuple constructions, "
                 "distribution-function estimates and brute-force verification"};
    app.require_subcommand(1);

    // gen
    std::string gen_desc;
    uint64_t gen_len = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "print a prefix of a constructed point");
    gen->add_option("descriptor", gen_desc, "point descriptor, e.g. \"t1 i=1 gaps=3,4,9,16\"")
        ->required();
    gen->add_option("length", gen_len, "prefix length")->required();
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // df
    std::vector<std::string> df_points;
    std::string df_checkpoints, df_grid, df_out, df_format = "csv";
    int df_precision = kDefaultPrecision, df_threads = 1;
    auto* df = app.add_subcommand("df", "empirical distribution-function estimates");
    df->add_option("--points", df_points, "point descriptors (repeat, >= 2)")
        ->required()
        ->expected(-2);
    df->add_option("--checkpoints", df_checkpoints, "comma-separated horizons")->required();
    df->add_option("--delta-grid", df_grid, "comma-separated rationals (default dyadic grid)");
    df->add_option("--precision", df_precision, "metric truncation depth L");
    df->add_option("--threads", df_threads, "worker count (never changes the output)");
    df->add_option("--out", df_out, "output path (default stdout)");
    df->add_option("--format", df_format, "csv | json");

    // classify
    std::vector<std::string> cl_points;
    std::string cl_checkpoints, cl_grid, cl_threshold, cl_floor, cl_out, cl_format = "json";
    int cl_precision = kDefaultPrecision, cl_threads = 1;
    auto* cl = app.add_subcommand("classify", "scrambled-tuple evidence classification");
    cl->add_option("--points", cl_points, "point descriptors (repeat, >= 2)")
        ->required()
        ->expected(-2);
    cl->add_option("--checkpoints", cl_checkpoints, "comma-separated horizons")->required();
    cl->add_option("--delta-grid", cl_grid, "comma-separated rationals");
    cl->add_option("--precision", cl_precision, "metric truncation depth L");
    cl->add_option("--threshold", cl_threshold, "smallness threshold (default 2^-(L-2))");
    cl->add_option("--floor", cl_floor, "positivity floor for tail spikes (default 1/4)");
    cl->add_option("--threads", cl_threads, "worker count (never changes the output)");
    cl->add_option("--out", cl_out, "output path (default stdout)");
    cl->add_option("--format", cl_format, "json | text");

    // verify
    auto* verify = app.add_subcommand("verify", "built-in verification suites");
    verify->require_subcommand(1);
    uint64_t vp_prefix = 16384, vp_cap = kQuadraticScanCap;
    auto* vp = verify->add_subcommand("p", "overlap-freeness of the doubling-recurrence prefix");
    vp->add_option("--prefix", vp_prefix, "prefix length to scan");
    vp->add_option("--cap", vp_cap, "quadratic-scan cap override");
    std::string vl_gaps = "1,2,3,4";
    int vl_n = 0;
    uint64_t vl_cap = kLinearScanCap;
    auto* vl = verify->add_subcommand("lemma1", "shifted-prefix identity");
    vl->add_option("--gaps", vl_gaps, "parity-locked exponent list");
    vl->add_option("--n", vl_n, "check n = 2..n (default: whole list)");
    vl->add_option("--cap", vl_cap, "materialization cap override");
    std::string v2_gaps = "3,4,9,16";
    uint64_t v2_r = 0, v2_window = 0, v2_horizon = 10000;
    auto* v2 = verify->add_subcommand("step2", "no shared window between shifted family points");
    v2->add_option("--gaps", v2_gaps, "parity-locked exponent list");
    v2->add_option("--r", v2_r, "shift difference (default: sweep 1..4)");
    v2->add_option("--window", v2_window, "window length (default 14r)");
    v2->add_option("--horizon", v2_horizon, "k sweep bound");
    uint64_t vm_n = 1024;
    auto* vm = verify->add_subcommand("lemma2", "2-adic coding difference density");
    vm->add_option("--n", vm_n, "index bound");
    std::string vo_gaps = "3,4,9,16", vo_checkpoints;
    int vo_precision = kDefaultPrecision, vo_threads = 1;
    auto* vo = verify->add_subcommand("oracle-match",
                                      "symbol-sweep estimator vs block-combinatorics counts");
    vo->add_option("--gaps", vo_gaps, "parity-locked exponent list");
    vo->add_option("--checkpoints", vo_checkpoints, "horizons (default: block boundaries)");
    vo->add_option("--precision", vo_precision, "metric truncation depth L");
    vo->add_option("--threads", vo_threads, "worker count");

    // plot
    std::string plot_in, plot_out;
    auto* plot = app.add_subcommand("plot", "render a df CSV as SVG (no new computation)");
    plot->add_option("--in", plot_in, "df CSV path")->required();
    plot->add_option("--out", plot_out, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_desc, gen_len, {gen_out}, out);
        if (df->parsed())
            return cmd_df(df_points, df_checkpoints, df_grid, df_precision, df_threads, {df_out},
                          df_format, out);
        if (cl->parsed())
            return cmd_classify(cl_points, cl_checkpoints, cl_grid, cl_precision, cl_threshold,
                                cl_floor, cl_threads, {cl_out}, cl_format, out);
        if (verify->parsed()) {
            if (vp->parsed()) return cmd_verify_p(vp_prefix, vp_cap, out);
            if (vl->parsed()) return cmd_verify_lemma1(vl_gaps, vl_n, vl_cap, out);
            if (v2->parsed()) return cmd_verify_step2(v2_gaps, v2_r, v2_window, v2_horizon, out);
            if (vm->parsed()) return cmd_verify_lemma2(vm_n, out);
            if (vo->parsed())
                return cmd_verify_oracle_match(vo_gaps, vo_checkpoints, vo_precision, vo_threads,
                                               out);
        }
        if (plot->parsed()) return cmd_plot(plot_in, plot_out, err);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace morsedc
