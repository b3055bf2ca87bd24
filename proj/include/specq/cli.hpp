#pragma once

#include <chrono>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "specq/classify.hpp"
#include "specq/ifs.hpp"
#include "specq/spectrum.hpp"

namespace specq::cli {

using nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_inconclusive = 3;

namespace detail {

// Round a display float to the requested number of significant digits.
// Display only; no decision ever routes through this.
inline double display(double v, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return std::stod(os.str());
}

struct NumberArgs {
    std::string q_poly;
    std::string root_in;
    std::string q_rational;

    void attach(CLI::App* cmd, bool also_plain_poly = false) {
        auto* p = cmd->add_option("--q-poly", q_poly, "defining polynomial of q, e.g. \"x^2-x-1\"");
        if (also_plain_poly) cmd->add_option("--poly", q_poly, "alias for --q-poly")->excludes(p);
        cmd->add_option("--root-in", root_in, "isolating interval lo,hi for the root");
        cmd->add_option("--q-rational", q_rational, "rational q as p/r (degree-1 shortcut)");
    }

    AlgebraicReal build() const {
        if (!q_rational.empty()) {
            if (!q_poly.empty())
                throw SyntaxError("give either --q-rational or --q-poly, not both");
            return AlgebraicReal::from_rational(parse_rational(q_rational));
        }
        if (q_poly.empty()) throw SyntaxError("missing --q-poly (or --q-rational)");
        IntPolynomial p = parse_polynomial(q_poly);
        if (root_in.empty()) {
            auto iso = isolate_real_roots(p);
            if (iso.size() == 1) return AlgebraicReal(p, iso[0]);
            throw SyntaxError("--root-in is required when the polynomial has " +
                              std::to_string(iso.size()) + " real roots");
        }
        auto comma = root_in.find(',');
        if (comma == std::string::npos)
            throw SyntaxError("--root-in expects lo,hi");
        Rat lo = parse_rational(root_in.substr(0, comma));
        Rat hi = parse_rational(root_in.substr(comma + 1));
        return AlgebraicReal(p, RationalInterval(lo, hi));
    }

    json echo() const {
        json j;
        if (!q_poly.empty()) j["q_poly"] = q_poly;
        if (!root_in.empty()) j["root_in"] = root_in;
        if (!q_rational.empty()) j["q_rational"] = q_rational;
        return j;
    }
};

inline json field_json(const FieldElement& e, int precision) {
    return json{{"exact", e.str()}, {"float", display(e.approx(), precision)}};
}

} // namespace detail

// Runs one CLI invocation. Returns the exit code and the serialized report
// (JSON by default, CSV where supported). Deterministic for fixed inputs
// except the timing_ms field.
inline std::pair<int, std::string> run(const std::vector<std::string>& argv) {
    CLI::App app{"exact spectra, classification and separation analysis of algebraic numbers"};
    app.require_subcommand(1);

    detail::NumberArgs num;
    int m = 1;
    int budget = 100000;
    int horizon = 0;
    std::string bound_str, digits_str, lambda_str = "1", format = "json";
    int precision = 12;

    auto add_common = [&](CLI::App* cmd, bool plain_poly = false) {
        num.attach(cmd, plain_poly);
        cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--precision", precision, "float display digits (display only)");
        return cmd;
    };

    auto* c_classify = add_common(app.add_subcommand("classify", "Pisot/Salem/Perron classification"), true);
    auto* c_density = add_common(app.add_subcommand("density", "density verdict for Y_m(q)"));
    c_density->add_option("--m", m, "digit bound m");
    auto* c_spectrum = add_common(app.add_subcommand("spectrum", "enumerate X-style spectrum up to a bound"));
    c_spectrum->add_option("--m", m, "digit bound m (digits 0..m)");
    c_spectrum->add_option("--digits", digits_str, "comma-separated nonnegative digits");
    c_spectrum->add_option("--bound", bound_str, "enumeration bound B")->required();
    auto* c_gaps = add_common(app.add_subcommand("gaps", "gap statistics of a spectrum slice"));
    c_gaps->add_option("--m", m, "digit bound m (digits 0..m)");
    c_gaps->add_option("--digits", digits_str, "comma-separated nonnegative digits");
    c_gaps->add_option("--bound", bound_str, "enumeration bound B")->required();
    auto* c_minval = add_common(app.add_subcommand("minval", "minimal nonzero |sum eps_i q^i|"));
    c_minval->add_option("--m", m, "digit bound m");
    c_minval->add_option("--horizon", horizon, "number of digits n")->required();
    auto* c_powers = add_common(app.add_subcommand("powers", "distances of lambda*q^n to integers"));
    c_powers->add_option("--horizon", horizon, "largest power N")->required();
    c_powers->add_option("--lambda", lambda_str, "rational lambda (default 1)");
    auto* c_ftc = add_common(app.add_subcommand("ftc", "finite type condition via the neighbor graph"));
    c_ftc->add_option("--m", m, "digit bound m");
    c_ftc->add_option("--budget", budget, "node budget");
    auto* c_completion = add_common(app.add_subcommand("completion", "completion depth of the neighbor graph"));
    c_completion->add_option("--m", m, "digit bound m");
    c_completion->add_option("--budget", budget, "node budget");
    auto* c_overlap = add_common(app.add_subcommand("overlap", "pigeonhole overlap multiplicity"));
    c_overlap->add_option("--m", m, "digit bound m");
    c_overlap->add_option("--horizon", horizon, "composition depth n")->required();

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend());
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        json err{{"error", {{"kind", "usage"}, {"message", e.what()}}}};
        return {exit_usage, err.dump(2)};
    }

    auto started = std::chrono::steady_clock::now();
    json report;
    int code = exit_ok;
    std::string csv_payload;

    try {
        auto digit_set = [&]() {
            if (!digits_str.empty()) {
                std::vector<Rat> ds;
                std::stringstream ss(digits_str);
                std::string tok;
                while (std::getline(ss, tok, ',')) ds.push_back(parse_rational(tok));
                return DigitSet(std::move(ds));
            }
            return DigitSet::range(0, m);
        };

        if (app.got_subcommand(c_classify)) {
            auto a = num.build();
            auto cls = classify_number(a);
            report["command"] = "classify";
            report["inputs"] = num.echo();
            report["results"] = {
                {"class", to_string(cls.tag)},
                {"monic", cls.monic},
                {"degree", a.degree()},
                {"counts",
                 {{"inside", cls.counts.inside}, {"on", cls.counts.on}, {"outside", cls.counts.outside}}},
                {"q_float", detail::display(a.approx(), precision)},
            };
        } else if (app.got_subcommand(c_density)) {
            auto a = num.build();
            auto v = density_verdict(a, m);
            report["command"] = "density";
            report["inputs"] = num.echo();
            report["inputs"]["m"] = m;
            report["results"]["verdict"] = v.dense ? "Dense" : "NotDense";
            if (v.reason)
                report["results"]["reason"] =
                    *v.reason == DensityReason::Pisot ? "Pisot" : "TooLarge";
        } else if (app.got_subcommand(c_spectrum) || app.got_subcommand(c_gaps)) {
            auto a = num.build();
            auto ds = digit_set();
            Rat bound = parse_rational(bound_str);
            auto slice = enumerate_spectrum(a, ds, bound);
            json inputs = num.echo();
            {
                std::string dtxt;
                for (const auto& d : ds.digits) dtxt += (dtxt.empty() ? "" : ",") + rat_to_string(d);
                inputs["digits"] = dtxt;
                inputs["bound"] = rat_to_string(bound);
            }
            if (app.got_subcommand(c_spectrum)) {
                report["command"] = "spectrum";
                report["inputs"] = inputs;
                json points = json::array();
                std::ostringstream csv;
                csv << "index,value_exact,value_float,gap_to_next\n";
                for (size_t i = 0; i < slice.points.size(); ++i) {
                    json pt{{"index", i},
                            {"value_exact", slice.points[i].value.str()},
                            {"value_float", detail::display(slice.points[i].approx, precision)}};
                    std::string gap;
                    if (i + 1 < slice.points.size())
                        gap = (slice.points[i + 1].value - slice.points[i].value).str();
                    pt["gap_to_next"] = gap;
                    points.push_back(pt);
                    csv << i << ",\"" << slice.points[i].value.str() << "\","
                        << std::setprecision(precision) << slice.points[i].approx << ",\"" << gap
                        << "\"\n";
                }
                report["results"] = {{"count", slice.points.size()},
                                     {"max_position", slice.max_position},
                                     {"points", points}};
                csv_payload = csv.str();
            } else {
                auto gs = gap_stats(slice);
                report["command"] = "gaps";
                report["inputs"] = inputs;
                report["results"] = {
                    {"point_count", slice.points.size()},
                    {"gap_count", gs.gaps.size()},
                    {"horizon_bound", rat_to_string(bound)},
                    {"min_gap", detail::field_json(gs.min_gap, precision)},
                    {"max_gap", detail::field_json(gs.max_gap, precision)},
                    {"note", "finite-horizon evidence; the limits are not claimed"},
                };
                std::ostringstream csv;
                csv << "index,value_exact,value_float,gap_to_next\n";
                for (size_t i = 0; i < slice.points.size(); ++i) {
                    std::string gap;
                    if (i + 1 < slice.points.size()) gap = gs.gaps[i].str();
                    csv << i << ",\"" << slice.points[i].value.str() << "\","
                        << std::setprecision(precision) << slice.points[i].approx << ",\"" << gap
                        << "\"\n";
                }
                csv_payload = csv.str();
            }
        } else if (app.got_subcommand(c_minval)) {
            auto a = num.build();
            if (horizon < 1) throw OutOfRange("--horizon must be positive");
            auto r = min_nonzero_value(a, m, horizon);
            report["command"] = "minval";
            report["inputs"] = num.echo();
            report["inputs"]["m"] = m;
            report["inputs"]["horizon"] = horizon;
            report["results"] = {
                {"min", detail::field_json(r.value, precision)},
                {"witness", r.witness},
                {"backend", a.degree() == 1 ? "meet-in-the-middle" : "branch-and-bound"},
            };
        } else if (app.got_subcommand(c_powers)) {
            auto a = num.build();
            Rat lambda = parse_rational(lambda_str);
            auto ns = power_norms(lambda, a, horizon);
            report["command"] = "powers";
            report["inputs"] = num.echo();
            report["inputs"]["lambda"] = rat_to_string(lambda);
            report["inputs"]["horizon"] = horizon;
            json entries = json::array();
            for (const auto& e : ns)
                entries.push_back({{"n", e.n},
                                   {"norm", detail::display(e.norm, precision)},
                                   {"norm_exact", e.norm_exact.str()},
                                   {"partial_sum", detail::display(e.partial_sum, precision)}});
            report["results"] = {{"entries", entries},
                                 {"certified_abs_error", power_norm_certified_error},
                                 {"partial_sum_abs_error", horizon * power_norm_certified_error}};
        } else if (app.got_subcommand(c_ftc) || app.got_subcommand(c_completion)) {
            auto a = num.build();
            auto f = ifs_from_q_m(a, m);
            auto g = build_neighbor_graph(f, budget);
            bool want_completion = app.got_subcommand(c_completion);
            report["command"] = want_completion ? "completion" : "ftc";
            report["inputs"] = num.echo();
            report["inputs"]["m"] = m;
            report["inputs"]["budget"] = budget;
            if (!g.complete) {
                code = exit_inconclusive;
                report["results"] = {{"status", "BudgetExceeded"},
                                     {"node_count", g.nodes.size()},
                                     {"note", "inconclusive: closure not reached within budget"}};
            } else if (want_completion) {
                auto k = completion_depth(g);
                report["results"]["status"] = "FiniteType";
                report["results"]["node_count"] = g.nodes.size();
                if (k) report["results"]["completion_k"] = *k;
                else report["results"]["completion_k"] = nullptr;
            } else {
                json gamma = json::array(), gamma_f = json::array();
                for (size_t i = 0; i < g.nodes.size(); ++i) {
                    gamma.push_back(g.nodes[i].str());
                    gamma_f.push_back(detail::display(g.node_floats[i], precision));
                }
                json deltas = json::array();
                for (const auto& d : g.deltas) deltas.push_back(d.str());
                json edges = json::array();
                for (size_t i = 0; i < g.edges.size(); ++i)
                    for (size_t k = 0; k < g.edges[i].size(); ++k) {
                        json e{{"node", i}, {"delta_index", k}};
                        if (g.edges[i][k] == -1) e["to"] = "EXIT";
                        else e["to"] = g.edges[i][k];
                        edges.push_back(e);
                    }
                auto wsc = wsc_constant(g);
                auto k = completion_depth(g);
                report["results"] = {
                    {"status", "FiniteType"},
                    {"gamma", gamma},
                    {"gamma_floats", gamma_f},
                    {"deltas", deltas},
                    {"edges", edges},
                    {"node_count", g.nodes.size()},
                    {"wsc_c", wsc.str()},
                    {"wsc_c_float", detail::display(wsc.approx(), precision)},
                };
                if (k) report["results"]["completion_k"] = *k;
                else report["results"]["completion_k"] = nullptr;
            }
        } else if (app.got_subcommand(c_overlap)) {
            auto a = num.build();
            if (horizon < 1) throw OutOfRange("--horizon must be positive");
            auto f = ifs_from_q_m(a, m);
            long ell = overlap_multiplicity(f, horizon);
            report["command"] = "overlap";
            report["inputs"] = num.echo();
            report["inputs"]["m"] = m;
            report["inputs"]["horizon"] = horizon;
            report["results"] = {{"ell", ell}};
        }
    } catch (const error& e) {
        json err{{"error", {{"kind", e.name()}, {"message", e.what()}}}};
        return {exit_usage, err.dump(2)};
    }

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    report["timing_ms"] = ms;
    report["exactness"] = {{"decisions", "exact"}, {"floats", "display only"}};

    if (format == "csv") {
        if (csv_payload.empty()) {
            json err{{"error", {{"kind", "usage"}, {"message", "csv output is only available for spectrum and gaps"}}}};
            return {exit_usage, err.dump(2)};
        }
        return {code, csv_payload};
    }
    return {code, report.dump(2)};
}

} // namespace specq::cli
