#include "modelspec/curvature_profile.hpp"

#include "modelspec/errors.hpp"

#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include <fstream>
#include <numbers>
#include <sstream>

namespace modelspec {

struct CurvatureProfile::Table {
    std::vector<double> t;
    std::vector<double> k;
    boost::math::interpolators::pchip<std::vector<double>> interp;
};

namespace {

constexpr double kTorusEnd = std::numbers::pi / 2.0;

double torus_gauss(double v) { return 4.0 * std::cos(v) / (2.0 + std::cos(v)); }

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != field.size() || !std::isfinite(v)) {
        throw InvalidArgument("profile csv line " + std::to_string(line) + ": bad number '" + field + "'");
    }
    return v;
}

} // namespace

CurvatureProfile CurvatureProfile::constant(double kappa) {
    detail::require(std::isfinite(kappa), "constant profile: curvature must be finite");
    CurvatureProfile p;
    p.kind_ = ProfileKind::constant;
    p.kappa_ = kappa;
    return p;
}

CurvatureProfile CurvatureProfile::torus_case1() {
    CurvatureProfile p;
    p.kind_ = ProfileKind::torus_case1;
    p.domain_end_ = kTorusEnd;
    return p;
}

CurvatureProfile CurvatureProfile::torus_case2() {
    CurvatureProfile p;
    p.kind_ = ProfileKind::torus_case2;
    p.kappa_ = -4.0;
    p.domain_end_ = kTorusEnd;
    return p;
}

CurvatureProfile CurvatureProfile::torus_case3(double alpha) {
    detail::require(alpha > 0.0 && alpha < std::numbers::pi, "torus case 3: alpha must lie in (0, pi)");
    CurvatureProfile p;
    p.kind_ = ProfileKind::torus_case3;
    p.alpha_ = alpha;
    p.domain_end_ = kTorusEnd;
    return p;
}

CurvatureProfile CurvatureProfile::tabulated(std::vector<double> t, std::vector<double> k) {
    detail::require(t.size() == k.size(), "tabulated profile: t and k sizes differ");
    detail::require(t.size() >= 4, "tabulated profile: need at least 4 samples");
    detail::require(t.front() == 0.0, "tabulated profile: first sample must be at t = 0");
    for (std::size_t i = 0; i < t.size(); ++i) {
        detail::require(std::isfinite(t[i]) && std::isfinite(k[i]), "tabulated profile: non-finite sample");
        if (i > 0) detail::require(t[i] > t[i - 1], "tabulated profile: t must be strictly increasing");
    }
    CurvatureProfile p;
    p.kind_ = ProfileKind::tabulated;
    p.domain_end_ = t.back();
    auto xs = t;
    auto ys = k;
    p.table_ = std::make_shared<const Table>(
        Table{std::move(t), std::move(k), boost::math::interpolators::pchip<std::vector<double>>(std::move(xs), std::move(ys))});
    return p;
}

CurvatureProfile CurvatureProfile::read_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<double> t, k;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw InvalidArgument("profile csv line " + std::to_string(lineno) + ": expected two fields");
        }
        const std::string a = trim(line.substr(0, comma));
        const std::string b = trim(line.substr(comma + 1));
        if (!header) {
            if (a != "t" || b != "k") throw InvalidArgument("profile csv: header must be 't,k'");
            header = true;
            continue;
        }
        t.push_back(parse_number(a, lineno));
        k.push_back(parse_number(b, lineno));
    }
    if (!header) throw InvalidArgument("profile csv: empty input");
    return tabulated(std::move(t), std::move(k));
}

CurvatureProfile CurvatureProfile::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open profile table '" + path.string() + "'");
    return read_csv(in);
}

double CurvatureProfile::operator()(double t) const {
    if (!(t >= 0.0) || t > domain_end_) {
        throw InvalidArgument("curvature profile evaluated outside its domain at t=" + std::to_string(t));
    }
    switch (kind_) {
    case ProfileKind::constant:
    case ProfileKind::torus_case2:
        return kappa_;
    case ProfileKind::torus_case1:
        return torus_gauss(2.0 * t);
    case ProfileKind::torus_case3:
        return t <= (std::numbers::pi - alpha_) / 2.0 ? torus_gauss(alpha_ + 2.0 * t) : -4.0;
    case ProfileKind::tabulated:
        return table_->interp(t);
    }
    return kappa_;
}

std::vector<double> CurvatureProfile::breakpoints() const {
    if (kind_ == ProfileKind::torus_case3) return {(std::numbers::pi - alpha_) / 2.0};
    if (kind_ == ProfileKind::tabulated) return {table_->t.begin() + 1, table_->t.end() - 1};
    return {};
}

std::string CurvatureProfile::describe() const {
    std::ostringstream os;
    os.precision(10);
    switch (kind_) {
    case ProfileKind::constant: os << "const:" << kappa_; break;
    case ProfileKind::torus_case1: os << "torus1"; break;
    case ProfileKind::torus_case2: os << "torus2"; break;
    case ProfileKind::torus_case3: os << "torus3:" << alpha_; break;
    case ProfileKind::tabulated: os << "table(" << table_->t.size() << " samples)"; break;
    }
    return os.str();
}

} // namespace modelspec
