#include "modelspec/cli.hpp"

#include "modelspec/bounds.hpp"
#include "modelspec/eigensolver.hpp"
#include "modelspec/errors.hpp"
#include "modelspec/heatkernel.hpp"
#include "modelspec/profiles.hpp"
#include "modelspec/table1.hpp"
#include "parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace modelspec::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct RunSpec {
    std::string command;
    std::vector<std::string> profiles;
    std::vector<int> ns{2};
    std::vector<std::string> p_text{"2"};
    std::vector<std::string> r0_text{"1"};
    std::vector<std::string> times_text{"0.05", "0.1", "0.2", "0.5", "1"};
    std::string alpha_text;
    std::string tmax_text;
    std::string out = "-";
    std::string format = "csv";
    double tol = 1e-8;
    int modes = 30;
    int points = 0;
    unsigned threads = 0;
    bool quiet = false;

    // Parsed forms.
    std::vector<double> ps, r0s, times;
    std::optional<double> alpha, tmax;
};

struct Output {
    std::string path; // "-" for the primary stream
    std::string content;
};

struct Outcome {
    int code = kOk;
    std::vector<Output> outputs;
    std::vector<std::string> notes;
};

// ---------------------------------------------------------------- formatting

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

class Csv {
public:
    explicit Csv(std::initializer_list<std::string> header) { row(std::vector<std::string>(header)); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += csv_field(cells[i]);
        }
        text_ += '\n';
    }
    [[nodiscard]] const std::string& str() const { return text_; }

private:
    std::string text_;
};

std::string num(double v) { return format_number(v); }
std::string num(std::optional<double> v) { return v ? format_number(*v) : std::string(); }

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
Json json_number(std::optional<double> v) { return v ? json_number(*v) : Json(nullptr); }

Json spec_json(const RunSpec& s) {
    Json j;
    j["command"] = s.command;
    j["profiles"] = s.profiles;
    j["n"] = s.ns;
    j["p"] = s.ps;
    j["r0"] = s.r0s;
    if (s.alpha) j["alpha"] = *s.alpha;
    j["tol"] = s.tol;
    j["format"] = s.format;
    return j;
}

std::string document(const RunSpec& s, Json results, Json diagnostics) {
    Json doc;
    doc["spec"] = spec_json(s);
    doc["results"] = std::move(results);
    doc["diagnostics"] = std::move(diagnostics);
    return doc.dump(2) + "\n";
}

fs::path companion(const std::string& out, const std::string& suffix) {
    const fs::path p(out);
    return p.parent_path() / (p.stem().string() + suffix);
}

// ---------------------------------------------------------------- validation

std::vector<double> parse_list(const std::vector<std::string>& items, const char* flag) {
    std::vector<double> v;
    for (const auto& s : items) {
        try {
            v.push_back(parse_quantity(s));
        } catch (const InvalidArgument& e) {
            throw InvalidArgument(std::string(flag) + ": " + e.what());
        }
    }
    if (v.empty()) throw InvalidArgument(std::string(flag) + ": empty list");
    return v;
}

void check_writable(const std::string& path) {
    if (path == "-") return;
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        throw InvalidArgument("--out: directory '" + parent.string() + "' does not exist");
    }
}

void validate_common(RunSpec& s) {
    s.ps = parse_list(s.p_text, "--p");
    s.r0s = parse_list(s.r0_text, "--r0");
    s.times = parse_list(s.times_text, "--times");
    if (!s.alpha_text.empty()) s.alpha = parse_quantity(s.alpha_text);
    if (!s.tmax_text.empty()) s.tmax = parse_quantity(s.tmax_text);
    for (int n : s.ns) detail::require(n >= 2 && n <= 64, "--n: dimension must lie in [2, 64]");
    for (double p : s.ps) detail::require(p > 1.0 && p <= 100.0, "--p: exponent must lie in (1, 100]");
    for (double r : s.r0s) detail::require(r > 0.0 && std::isfinite(r), "--r0: radius must be positive");
    for (double t : s.times) detail::require(t > 0.0 && std::isfinite(t), "--times: times must be positive");
    detail::require(s.tol >= 1e-12 && s.tol <= 1e-2, "--tol: must lie in [1e-12, 1e-2]");
    detail::require(s.modes >= 1 && s.modes <= 200, "--modes: must lie in [1, 200]");
    detail::require(s.points >= 0 && s.points <= 100000, "--points: must lie in [2, 100000]");
    detail::require(s.points == 0 || s.points >= 2, "--points: must lie in [2, 100000]");
    detail::require(!s.alpha || (*s.alpha > 0.0 && *s.alpha < std::numbers::pi), "--alpha: must lie in (0, pi)");
    check_writable(s.out);
}

std::vector<NamedProfile> resolve_profiles(const RunSpec& s) {
    std::vector<NamedProfile> v;
    for (const auto& name : s.profiles) v.push_back(profile_by_name(name, s.alpha));
    return v;
}

void require_inside(const NamedProfile& prof, double r) {
    if (!(r < prof.recommended_end)) {
        throw InvalidArgument("--r0: radius " + format_number(r) + " must be below the domain end " +
                              format_number(prof.recommended_end) + " of profile " + prof.name);
    }
}

std::vector<double> uniform(double a, double b, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1);
    v.back() = b;
    return v;
}

// ---------------------------------------------------------------- eigen / sweep / bounds

struct Cell {
    std::size_t model = 0;
    std::string profile;
    int n = 2;
    double p = 2.0;
    double r0 = 1.0;
};

struct ModelSet {
    std::vector<ModelManifold> models;
    std::vector<Cell> cells;
};

ModelSet build_cells(const RunSpec& s) {
    const auto profiles = resolve_profiles(s);
    for (const auto& prof : profiles) {
        for (double r : s.r0s) require_inside(prof, r);
    }
    const double reach = *std::max_element(s.r0s.begin(), s.r0s.end());
    ModelSet set;
    for (const auto& prof : profiles) {
        for (int n : s.ns) {
            const double limit = std::isfinite(prof.recommended_end) ? prof.recommended_end : reach;
            set.models.push_back(make_model(prof, n, limit));
            for (double p : s.ps) {
                for (double r : s.r0s) set.cells.push_back({set.models.size() - 1, prof.name, n, p, r});
            }
        }
    }
    return set;
}

struct EigenRow {
    double lambda = std::nan("");
    BoundsReport bounds;
    int iterations = 0;
    bool sandwich = false;
    std::string status = "ok";
};

Outcome cmd_eigen(const RunSpec& s) {
    const auto set = build_cells(s);
    std::vector<EigenRow> rows(set.cells.size());
    detail::parallel_for(set.cells.size(), s.threads, [&](std::size_t i) {
        const auto& c = set.cells[i];
        const auto& model = set.models[c.model];
        auto& row = rows[i];
        try {
            row.bounds = bounds_report(model, c.p, c.r0);
            const auto res = solve_radial({model, c.p, c.r0}, s.tol);
            row.lambda = res.lambda;
            row.iterations = res.iterations;
            const double slack = s.tol * res.lambda;
            row.sandwich = row.bounds.a_p_m_p <= res.lambda + slack && res.lambda <= row.bounds.m_p + slack;
        } catch (const NumericalError& e) {
            row.status = std::string("numerical failure: ") + e.what();
        }
    });

    Outcome o;
    std::size_t failed = 0, violated = 0;
    Csv csv{"profile", "n", "p", "r0", "lambda", "m_p", "a_p_m_p", "cheeger_lower", "iterations", "sandwich", "status"};
    Json results = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = set.cells[i];
        const auto& r = rows[i];
        const bool ok = r.status == "ok";
        failed += !ok;
        violated += ok && !r.sandwich;
        csv.row({c.profile, std::to_string(c.n), num(c.p), num(c.r0), ok ? num(r.lambda) : "", ok ? num(r.bounds.m_p) : "",
                 ok ? num(r.bounds.a_p_m_p) : "", ok ? num(r.bounds.cheeger_lower) : "",
                 ok ? std::to_string(r.iterations) : "", ok ? (r.sandwich ? "1" : "0") : "", r.status});
        Json j;
        j["profile"] = c.profile;
        j["n"] = c.n;
        j["p"] = c.p;
        j["r0"] = c.r0;
        j["lambda"] = ok ? json_number(r.lambda) : Json(nullptr);
        j["m_p"] = ok ? json_number(r.bounds.m_p) : Json(nullptr);
        j["a_p_m_p"] = ok ? json_number(r.bounds.a_p_m_p) : Json(nullptr);
        j["cheeger_lower"] = ok ? json_number(r.bounds.cheeger_lower) : Json(nullptr);
        j["iterations"] = r.iterations;
        j["sandwich"] = ok && r.sandwich;
        j["status"] = r.status;
        results.push_back(std::move(j));
    }
    Json diag;
    diag["cells"] = rows.size();
    diag["failed"] = failed;
    diag["sandwich_violations"] = violated;
    o.outputs.push_back({s.out, s.format == "json" ? document(s, results, diag) : csv.str()});
    o.notes.push_back(std::to_string(rows.size()) + " cells, " + std::to_string(failed) + " failed, " +
                      std::to_string(violated) + " sandwich violations");
    o.code = failed ? kNumericalFailure : violated ? kPropertyViolation : kOk;
    return o;
}

Outcome cmd_bounds(const RunSpec& s) {
    const auto set = build_cells(s);
    std::vector<BoundsReport> rows(set.cells.size());
    detail::parallel_for(set.cells.size(), s.threads, [&](std::size_t i) {
        const auto& c = set.cells[i];
        rows[i] = bounds_report(set.models[c.model], c.p, c.r0);
    });
    Csv csv{"profile", "n", "p", "r0", "m_p", "a_p_m_p", "argmax_r", "cheeger_lower", "c_npr"};
    Json results = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = set.cells[i];
        const auto& r = rows[i];
        csv.row({c.profile, std::to_string(c.n), num(c.p), num(c.r0), num(r.m_p), num(r.a_p_m_p), num(r.argmax_r),
                 num(r.cheeger_lower), num(r.c_npr)});
        Json j;
        j["profile"] = c.profile;
        j["n"] = c.n;
        j["p"] = c.p;
        j["r0"] = c.r0;
        j["m_p"] = r.m_p;
        j["a_p_m_p"] = r.a_p_m_p;
        j["argmax_r"] = r.argmax_r;
        j["cheeger_lower"] = json_number(r.cheeger_lower);
        j["c_npr"] = json_number(r.c_npr);
        results.push_back(std::move(j));
    }
    Outcome o;
    o.outputs.push_back({s.out, s.format == "json" ? document(s, results, Json::object()) : csv.str()});
    o.notes.push_back(std::to_string(rows.size()) + " cells");
    return o;
}

// ---------------------------------------------------------------- warp

Outcome cmd_warp(const RunSpec& s) {
    detail::require(s.profiles.size() == 1, "warp: exactly one --profile");
    const auto prof = profile_by_name(s.profiles.front(), s.alpha);
    double end = s.tmax.value_or(std::isfinite(prof.recommended_end) ? prof.recommended_end : 3.0);
    detail::require(end > 0.0 && std::isfinite(end), "--tmax: must be positive and finite");
    detail::require(end <= prof.recommended_end, "--tmax: exceeds the domain end of profile " + prof.name);
    const int points = s.points ? s.points : 257;

    const auto w = warping_from_curvature(prof.profile, end);
    const auto grid = uniform(0.0, w.t_max(), points);
    Csv csv{"t", "f", "fprime", "k"};
    Json results = Json::array();
    for (double t : grid) {
        const double f = w.value(t), fp = w.derivative(t), k = prof.profile(t);
        csv.row({num(t), num(f), num(fp), num(k)});
        results.push_back(Json{{"t", t}, {"f", f}, {"fprime", fp}, {"k", k}});
    }
    const auto t0 = stopping_time(w);
    Json diag;
    diag["closes"] = w.closes();
    diag["l"] = w.zero();
    diag["stopping_time"] = json_number(t0);
    Outcome o;
    o.outputs.push_back({s.out, s.format == "json" ? document(s, results, diag) : csv.str()});
    o.notes.push_back(std::string("warping ") + (w.closes() ? "closes at " : "positive up to ") + num(w.zero()) +
                      (t0 ? ", f' crosses 1 at " + num(*t0) : std::string()));
    return o;
}

// ---------------------------------------------------------------- table1

Outcome cmd_table1(const RunSpec& s) {
    if (s.format == "csv" && s.out != "-") check_writable(companion(s.out, "_deviation.csv").string());
    const auto cells = table1::compute(s.threads);

    Outcome o;
    Csv values{"case", "p", "pi/24", "pi/12", "pi/6", "pi/4", "pi/3", "5pi/12"};
    Csv deviations{"case", "p", "pi/24", "pi/12", "pi/6", "pi/4", "pi/3", "5pi/12"};
    Json results = Json::array();
    double worst[table1::kCases] = {};
    const std::size_t width = table1::kDeltaNumerators.size();
    for (std::size_t row = 0; row * width < cells.size(); ++row) {
        const auto& first = cells[row * width];
        std::vector<std::string> v{"JM" + std::to_string(first.torus_case), num(first.p)};
        std::vector<std::string> d = v;
        for (std::size_t k = 0; k < width; ++k) {
            const auto& c = cells[row * width + k];
            v.push_back(num(c.value));
            d.push_back(num(c.deviation));
            worst[c.torus_case - 1] = std::max(worst[c.torus_case - 1], std::abs(c.deviation));
            results.push_back(Json{{"case", "JM" + std::to_string(c.torus_case)},
                                   {"p", c.p},
                                   {"delta", c.delta},
                                   {"m_p", c.value},
                                   {"published", c.golden},
                                   {"deviation", c.deviation},
                                   {"argmax_r", c.argmax_r}});
        }
        values.row(v);
        deviations.row(d);
    }
    Json diag;
    for (int c = 0; c < table1::kCases; ++c) diag["max_abs_deviation_JM" + std::to_string(c + 1)] = worst[c];
    if (s.format == "json") {
        o.outputs.push_back({s.out, document(s, results, diag)});
    } else {
        o.outputs.push_back({s.out, values.str()});
        if (s.out != "-") o.outputs.push_back({companion(s.out, "_deviation.csv").string(), deviations.str()});
    }
    for (int c = 0; c < table1::kCases; ++c) {
        o.notes.push_back("JM" + std::to_string(c + 1) + " max relative deviation " + num(worst[c]));
    }
    return o;
}

// ---------------------------------------------------------------- heat / compare

const ModelManifold& single_model(const RunSpec& s, std::vector<ModelManifold>& store, const std::string& name,
                                  double r0) {
    const auto prof = profile_by_name(name, s.alpha);
    require_inside(prof, r0);
    const double limit = std::isfinite(prof.recommended_end) ? prof.recommended_end : r0;
    store.push_back(make_model(prof, s.ns.front(), limit));
    return store.back();
}

void require_trusted(const RadialSpectrum& spec, const std::vector<double>& times) {
    for (double t : times) {
        if (t < spec.t_min()) {
            throw InvalidArgument("--times: " + format_number(t) + " is below the trusted minimum t_min = " +
                                  format_number(spec.t_min()) + " for " + std::to_string(spec.size()) + " modes");
        }
    }
}

Json spectrum_json(const RadialSpectrum& spec) {
    Json modes = Json::array();
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const auto& m = spec.mode(j);
        modes.push_back(Json{{"j", j + 1}, {"mu", m.mu}, {"center", m.center}, {"boundary", m.boundary},
                             {"nodes", m.nodes}});
    }
    return modes;
}

Outcome cmd_heat(const RunSpec& s) {
    detail::require(s.profiles.size() == 1, "heat: exactly one --profile");
    detail::require(s.ns.size() == 1 && s.r0s.size() == 1, "heat: single --n and --r0");
    if (s.format == "csv" && s.out != "-") check_writable(companion(s.out, "_spectrum.json").string());
    const double r0 = s.r0s.front();
    std::vector<ModelManifold> store;
    store.reserve(1);
    const auto& model = single_model(s, store, s.profiles.front(), r0);

    const auto spec = radial_spectrum(model, r0, s.modes);
    require_trusted(spec, s.times);
    const auto radii = uniform(0.0, r0, s.points ? s.points : 21);
    const auto ev = evaluate_kernel(spec, radii, s.times);
    const double ortho = orthonormality_deviation(spec);

    Csv csv{"r", "t", "H"};
    Json grid = Json::array();
    for (std::size_t i = 0; i < ev.t.size(); ++i) {
        for (std::size_t k = 0; k < ev.r.size(); ++k) {
            csv.row({num(ev.r[k]), num(ev.t[i]), num(ev.values[i][k])});
            grid.push_back(Json{{"r", ev.r[k]}, {"t", ev.t[i]}, {"H", ev.values[i][k]}});
        }
    }
    Json diag;
    diag["t_min"] = spec.t_min();
    diag["tail_amplitude"] = spec.tail_amplitude();
    diag["orthonormality_deviation"] = ortho;
    diag["positive"] = ev.positive;
    diag["strictly_decreasing"] = ev.decreasing;
    diag["unresolved_positivity"] = ev.unresolved_positivity;
    diag["unresolved_decrease"] = ev.unresolved_decrease;

    Outcome o;
    if (s.format == "json") {
        Json d = diag;
        d["spectrum"] = spectrum_json(spec);
        o.outputs.push_back({s.out, document(s, grid, d)});
    } else {
        o.outputs.push_back({s.out, csv.str()});
        if (s.out != "-") {
            o.outputs.push_back({companion(s.out, "_spectrum.json").string(), document(s, spectrum_json(spec), diag)});
        }
    }
    o.notes.push_back("mu_1 = " + num(spec.mode(0).mu) + ", t_min = " + num(spec.t_min()) +
                      ", orthonormality deviation " + num(ortho));
    if (!ev.positive || !ev.decreasing) {
        o.notes.push_back("kernel positivity or radial decrease violated");
        o.code = kPropertyViolation;
    }
    return o;
}

Outcome cmd_compare(const RunSpec& s) {
    detail::require(s.profiles.size() == 3, "compare: --profile needs three entries: plus,mid,minus");
    detail::require(s.ns.size() == 1 && s.r0s.size() == 1, "compare: single --n and --r0");
    const double r0 = s.r0s.front();
    double kappa[3];
    for (int i = 0; i < 3; ++i) {
        const auto prof = profile_by_name(s.profiles[static_cast<std::size_t>(i)], s.alpha);
        detail::require(prof.profile.kind() == ProfileKind::constant,
                        "compare: profiles must be constant curvature (flat or const:<kappa>)");
        kappa[i] = prof.profile.kappa();
        require_inside(prof, r0);
    }
    detail::require(kappa[0] >= kappa[1] && kappa[1] >= kappa[2], "compare: need kappa_plus >= kappa_mid >= kappa_minus");

    std::vector<ModelManifold> store;
    store.reserve(3);
    std::vector<const ModelManifold*> models;
    for (const auto& name : s.profiles) models.push_back(&single_model(s, store, name, r0));
    std::vector<std::optional<RadialSpectrum>> specs(3);
    detail::parallel_for(3, s.threads, [&](std::size_t i) { specs[i].emplace(radial_spectrum(*models[i], r0, s.modes)); });
    for (const auto& sp : specs) require_trusted(*sp, s.times);
    const auto radii = uniform(0.0, r0, s.points ? s.points : 21);
    const auto cmp = compare_kernels(*specs[0], *specs[1], *specs[2], radii, s.times);

    const std::vector<std::pair<std::string, double>> metrics{
        {"grid_points", static_cast<double>(cmp.grid_points)},
        {"margin_plus_over_mid", cmp.margin_upper},
        {"margin_mid_over_minus", cmp.margin_lower},
        {"reversed_margin_mid_over_plus", cmp.reversed_margin_upper},
        {"reversed_margin_minus_over_mid", cmp.reversed_margin_lower},
        {"mu1_plus", cmp.mu_plus},
        {"mu1_mid", cmp.mu_mid},
        {"mu1_minus", cmp.mu_minus},
        {"slack", cmp.slack},
        {"kernels_ordered", cmp.kernels_ordered ? 1.0 : 0.0},
        {"eigenvalues_ordered", cmp.eigenvalues_ordered ? 1.0 : 0.0},
    };
    Csv csv{"metric", "value"};
    Json results = Json::array();
    for (const auto& [k, v] : metrics) {
        csv.row({k, num(v)});
        results.push_back(Json{{"metric", k}, {"value", v}});
    }
    Outcome o;
    o.outputs.push_back({s.out, s.format == "json" ? document(s, results, Json{{"holds", cmp.holds()}}) : csv.str()});
    o.notes.push_back("min margins " + num(cmp.margin_upper) + ", " + num(cmp.margin_lower) + "; mu_1 " +
                      num(cmp.mu_plus) + " <= " + num(cmp.mu_mid) + " <= " + num(cmp.mu_minus));
    if (!cmp.holds()) o.code = kPropertyViolation;
    return o;
}

// ---------------------------------------------------------------- plumbing

void write_outputs(const std::vector<Output>& outputs, std::ostream& out) {
    for (const auto& o : outputs) {
        if (o.path == "-") {
            out << o.content;
            continue;
        }
        std::ofstream f(o.path, std::ios::binary);
        f << o.content;
        if (!f) throw std::runtime_error("cannot write " + o.path);
    }
}

} // namespace

double parse_quantity(std::string_view text) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    auto real = [&](std::string_view v) {
        const std::string s(trim(v));
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size() || !std::isfinite(x)) {
            throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
        }
        return x;
    };
    const std::string_view t = trim(text);
    const auto pos = t.find("pi");
    if (pos == std::string_view::npos) return real(t);
    std::string_view coef = trim(t.substr(0, pos));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double c = 1.0;
    if (coef == "-") c = -1.0;
    else if (!coef.empty()) c = real(coef);
    std::string_view rest = trim(t.substr(pos + 2));
    double d = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
        d = real(rest.substr(1));
        if (d == 0.0) throw InvalidArgument("division by zero in '" + std::string(text) + "'");
    }
    return c * std::numbers::pi / d;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunSpec spec;
    CLI::App app{"Spectral computations on rotationally symmetric model manifolds"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", spec.out, "Output path, - for stdout")->capture_default_str();
        sub->add_option("--format", spec.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_flag("--quiet", spec.quiet, "Suppress the summary on stderr");
        sub->add_option("--alpha", spec.alpha_text, "Base-point angle for torus3 (default pi/2)");
    };
    auto grid = [&](CLI::App* sub, bool lists) {
        sub->add_option("--n", spec.ns, "Dimension")->delimiter(',')->capture_default_str();
        sub->add_option("--p", spec.p_text, lists ? "Exponents (comma list)" : "Exponent")->delimiter(',');
        sub->add_option("--r0", spec.r0_text, "Ball radii (comma list; pi forms allowed)")->delimiter(',');
    };
    auto threads = [&](CLI::App* sub) { sub->add_option("--threads", spec.threads, "Worker threads (0: all cores)"); };

    const std::map<std::string, std::vector<std::string>> default_profiles{
        {"warp", {"torus1"}},   {"eigen", {"flat"}}, {"bounds", {"flat"}},
        {"table1", {}},         {"heat", {"flat"}},  {"compare", {"const:1", "flat", "const:-1"}},
        {"sweep", {"flat"}},
    };

    auto* warp = app.add_subcommand("warp", "Warping function f and f' on a uniform grid");
    auto* eigen = app.add_subcommand("eigen", "First Dirichlet eigenvalue of the radial p-Laplacian");
    auto* bounds = app.add_subcommand("bounds", "Grigor'yan-type upper bound and flat-space lower bounds");
    auto* table = app.add_subcommand("table1", "Regenerate the torus upper-bound table with deviations");
    auto* heat = app.add_subcommand("heat", "Radial spectrum and center heat kernel on a ball");
    auto* compare = app.add_subcommand("compare", "Compare center heat kernels of three space forms");
    auto* sweep = app.add_subcommand("sweep", "Eigenvalues over profiles x n x p x r0");

    for (auto* sub : {warp, eigen, bounds, table, heat, compare, sweep}) common(sub);
    for (auto* sub : {warp, eigen, bounds, heat, compare, sweep}) {
        sub->add_option("--profile", spec.profiles,
                        "flat, const:<kappa>, torus1, torus2, torus3[:alpha], table:<csv>")
            ->delimiter(',');
    }
    for (auto* sub : {eigen, bounds, heat, compare, sweep}) grid(sub, true);
    for (auto* sub : {eigen, sweep}) sub->add_option("--tol", spec.tol, "Relative bracket tolerance")->capture_default_str();
    for (auto* sub : {eigen, bounds, table, sweep, compare}) threads(sub);
    warp->add_option("--tmax", spec.tmax_text, "Right end of the grid (default: profile domain end or 3)");
    for (auto* sub : {warp, heat, compare}) sub->add_option("--points", spec.points, "Grid points");
    for (auto* sub : {heat, compare}) {
        sub->add_option("--modes", spec.modes, "Radial modes M")->capture_default_str();
        sub->add_option("--times", spec.times_text, "Times (comma list)")->delimiter(',');
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    CLI::App* chosen = app.get_subcommands().front();
    spec.command = chosen->get_name();
    if (spec.profiles.empty()) spec.profiles = default_profiles.at(spec.command);

    Outcome outcome;
    try {
        validate_common(spec);
        if (spec.command == "warp") outcome = cmd_warp(spec);
        else if (spec.command == "eigen" || spec.command == "sweep") outcome = cmd_eigen(spec);
        else if (spec.command == "bounds") outcome = cmd_bounds(spec);
        else if (spec.command == "table1") outcome = cmd_table1(spec);
        else if (spec.command == "heat") outcome = cmd_heat(spec);
        else outcome = cmd_compare(spec);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const PropertyViolation& e) {
        err << "property violation: " << e.what() << "\n";
        return kPropertyViolation;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }

    try {
        write_outputs(outcome.outputs, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    if (!spec.quiet) {
        for (const auto& n : outcome.notes) err << spec.command << ": " << n << "\n";
    }
    return outcome.code;
}

} // namespace modelspec::cli
