#include "ncfa/spaces.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ncfa {

OrliczFunction::OrliczFunction(std::function<double(double)> evaluate, double p_convex, double q_concave,
                               std::string label)
    : f_(std::move(evaluate)), p_convex_(p_convex), q_concave_(q_concave), label_(std::move(label)) {
    if (!(p_convex_ >= 1.0)) throw std::invalid_argument("OrliczFunction: p_convex must be >= 1");
    if (!(q_concave_ >= p_convex_) || !std::isfinite(q_concave_))
        throw std::invalid_argument("OrliczFunction: requires p_convex <= q_concave < inf");
}

void OrliczFunction::validate() const {
    constexpr int grid = 256;
    constexpr double slack = 1e-9;
    if (std::abs(f_(0.0)) > 1e-12) throw std::invalid_argument("OrliczFunction: Phi(0) != 0");
    // log-spaced grid in the argument of the powered composition
    const double lo = std::log(1e-8), hi = std::log(1e8);
    double prev_t = 0.0, prev_val = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double u = std::exp(lo + (hi - lo) * i / (grid - 1));
        const double val = f_(u);
        if (val < prev_val - slack * (1.0 + std::abs(prev_val)))
            throw std::invalid_argument("OrliczFunction: not nondecreasing near t=" + std::to_string(prev_t));
        prev_t = u;
        prev_val = val;
    }
    auto midpoint_shape = [&](double power, bool convex) {
        for (int i = 0; i + 2 < grid; ++i) {
            const double u1 = std::exp(lo + (hi - lo) * i / (grid - 1));
            const double u2 = std::exp(lo + (hi - lo) * (i + 2) / (grid - 1));
            const double um = 0.5 * (u1 + u2);
            const double g1 = f_(std::pow(u1, 1.0 / power));
            const double g2 = f_(std::pow(u2, 1.0 / power));
            const double gm = f_(std::pow(um, 1.0 / power));
            const double chord = 0.5 * (g1 + g2);
            const double tol = slack * (1.0 + std::abs(g1) + std::abs(g2));
            if (convex && gm > chord + tol)
                throw std::invalid_argument("OrliczFunction: p-convexity violated near u=" + std::to_string(um));
            if (!convex && gm < chord - tol)
                throw std::invalid_argument("OrliczFunction: q-concavity violated near u=" + std::to_string(um));
        }
    };
    midpoint_shape(p_convex_, true);
    midpoint_shape(q_concave_, false);
}

namespace {

std::string format_number(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

OrliczFunction OrliczFunction::power(double p) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("OrliczFunction::power: p must be in [1,inf)");
    return OrliczFunction([p](double t) { return std::pow(t, p); }, p, p, "pow:" + format_number(p));
}

OrliczFunction OrliczFunction::mpq(double p, double q) {
    if (!(1.0 <= p) || !(p <= q) || std::isinf(q))
        throw std::invalid_argument("OrliczFunction::mpq: requires 1 <= p <= q < inf");
    auto f = [p, q](double t) { return t < 1.0 ? p * std::pow(t, q) : q * std::pow(t, p) + p - q; };
    return OrliczFunction(f, p, q, "M:" + format_number(p) + "," + format_number(q));
}

OrliczFunction OrliczFunction::power_log(double p, double q) {
    if (!(p > 1.0) || !(q > 0.0)) throw std::invalid_argument("OrliczFunction::power_log: requires p > 1, q > 0");
    auto f = [p, q](double t) { return std::pow(t, p) * std::log1p(std::pow(t, q)); };
    return OrliczFunction(f, p, p + q, "plog:" + format_number(p) + "," + format_number(q));
}

OrliczFunction OrliczFunction::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("OrliczFunction::parse: expected '<fam>:<args>'");
    const std::string fam = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    const auto comma = args.find(',');
    auto to_num = [](const std::string& s) {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("OrliczFunction::parse: bad number '" + s + "'");
        return v;
    };
    if (fam == "pow") {
        if (comma != std::string::npos) throw std::invalid_argument("OrliczFunction::parse: pow takes one argument");
        return power(to_num(args));
    }
    if (comma == std::string::npos) throw std::invalid_argument("OrliczFunction::parse: expected two arguments");
    const double a = to_num(args.substr(0, comma));
    const double b = to_num(args.substr(comma + 1));
    if (fam == "M") return mpq(a, b);
    if (fam == "plog") return power_log(a, b);
    throw std::invalid_argument("OrliczFunction::parse: unknown family '" + fam + "'");
}

NormSpec NormSpec::Lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("NormSpec::Lp: p must be in [1,inf]");
    NormSpec s;
    s.kind_ = Kind::lp;
    s.p_ = p;
    return s;
}

NormSpec NormSpec::cap(double p, double q) {
    if (!(p >= 1.0) || !(q >= p)) throw std::invalid_argument("NormSpec::cap: requires 1 <= p <= q <= inf");
    NormSpec s;
    s.kind_ = Kind::cap;
    s.p_ = p;
    s.q_ = q;
    return s;
}

NormSpec NormSpec::sum(double p, double q) {
    if (!(p >= 1.0) || !(q >= p)) throw std::invalid_argument("NormSpec::sum: requires 1 <= p <= q <= inf");
    if (std::isinf(p)) throw std::invalid_argument("NormSpec::sum: p = inf is not supported");
    NormSpec s;
    s.kind_ = Kind::sum;
    s.p_ = p;
    s.q_ = q;
    return s;
}

NormSpec NormSpec::orlicz(OrliczFunction phi) {
    NormSpec s;
    s.kind_ = Kind::orlicz;
    s.phi_ = std::make_shared<OrliczFunction>(std::move(phi));
    return s;
}

NormSpec NormSpec::ZE(NormSpec inner, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("NormSpec::ZE: p must be in [1,inf]");
    NormSpec s;
    s.kind_ = Kind::ze;
    s.p_ = p;
    s.inner_ = std::make_shared<NormSpec>(std::move(inner));
    return s;
}

std::string NormSpec::format() const {
    switch (kind_) {
        case Kind::lp:
            return "Lp(" + format_number(p_) + ")";
        case Kind::cap:
            return "cap(" + format_number(p_) + "," + format_number(q_) + ")";
        case Kind::sum:
            return "sum(" + format_number(p_) + "," + format_number(q_) + ")";
        case Kind::orlicz:
            return "orlicz(" + phi_->label() + ")";
        case Kind::ze:
            return "ZE" + format_number(p_) + "(" + inner_->format() + ")";
    }
    return {};
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool consume(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c)) throw std::invalid_argument("NormSpec::parse: expected '" + std::string(1, c) + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }
    double number() {
        skip_ws();
        if (s.compare(pos, 3, "inf") == 0) {
            pos += 3;
            return kInf;
        }
        std::size_t consumed = 0;
        const double v = std::stod(s.substr(pos), &consumed);
        if (consumed == 0) throw std::invalid_argument("NormSpec::parse: expected a number");
        pos += consumed;
        return v;
    }
    std::string until(char close) {
        std::size_t start = pos;
        int depth = 0;
        while (pos < s.size()) {
            if (s[pos] == '(') ++depth;
            if (s[pos] == close && depth == 0) return s.substr(start, pos - start);
            if (s[pos] == ')') --depth;
            ++pos;
        }
        throw std::invalid_argument("NormSpec::parse: unbalanced parentheses");
    }
};

NormSpec parse_spec(Cursor& c) {
    const std::string name = c.ident();
    if (name == "Lp") {
        c.expect('(');
        const double p = c.number();
        c.expect(')');
        return NormSpec::Lp(p);
    }
    if (name == "cap" || name == "sum") {
        c.expect('(');
        const double p = c.number();
        c.expect(',');
        const double q = c.number();
        c.expect(')');
        return name == "cap" ? NormSpec::cap(p, q) : NormSpec::sum(p, q);
    }
    if (name == "orlicz") {
        c.expect('(');
        const std::string body = c.until(')');
        c.expect(')');
        return NormSpec::orlicz(OrliczFunction::parse(body));
    }
    if (name == "ZE" || name == "ZEinf") {
        const double p = (name == "ZEinf") ? kInf : c.number();
        c.expect('(');
        NormSpec inner = parse_spec(c);
        c.expect(')');
        return NormSpec::ZE(std::move(inner), p);
    }
    throw std::invalid_argument("NormSpec::parse: unknown spec '" + name + "'");
}

}  // namespace

NormSpec NormSpec::parse(const std::string& text) {
    Cursor c{text};
    NormSpec spec = parse_spec(c);
    c.skip_ws();
    if (c.pos != text.size()) throw std::invalid_argument("NormSpec::parse: trailing characters in '" + text + "'");
    return spec;
}

bool NormSpec::has_endpoint_exponent() const {
    auto endpoint = [](double v) { return v <= 1.0 || std::isinf(v); };
    switch (kind_) {
        case Kind::lp:
            return endpoint(p_);
        case Kind::cap:
        case Kind::sum:
            return endpoint(p_) || endpoint(q_);
        case Kind::orlicz:
            return endpoint(phi_->p_convex()) || endpoint(phi_->q_concave());
        case Kind::ze:
            return endpoint(p_) || inner_->has_endpoint_exponent();
    }
    return false;
}

double norm(const NormSpec& spec, const StepFunction& mu) {
    switch (spec.kind()) {
        case NormSpec::Kind::lp: {
            if (std::isinf(spec.p())) return mu.top_value();
            if (mu.empty()) return 0.0;
            return std::pow(integrate_power(mu, spec.p(), 0.0, kInf), 1.0 / spec.p());
        }
        case NormSpec::Kind::cap:
            return std::max(norm(NormSpec::Lp(spec.p()), mu), norm(NormSpec::Lp(spec.q()), mu));
        case NormSpec::Kind::sum: {
            // Holmstedt surrogate for the L_p + L_q norm:
            //   (int_0^1 mu^p)^{1/p} + (int_1^inf mu^q)^{1/q},
            // with the q = inf convention that the tail term is mu(1).
            if (mu.empty()) return 0.0;
            const double head = std::pow(integrate_power(mu, spec.p(), 0.0, 1.0), 1.0 / spec.p());
            double tail;
            if (std::isinf(spec.q()))
                tail = mu.value_at(1.0);
            else
                tail = std::pow(integrate_power(mu, spec.q(), 1.0, kInf), 1.0 / spec.q());
            return head + tail;
        }
        case NormSpec::Kind::orlicz:
            return luxemburg_norm(spec.phi(), mu);
        case NormSpec::Kind::ze:
            return norm(spec.inner(), restrict_to(mu, 0.0, 1.0)) + norm(NormSpec::sum(1.0, spec.p()), mu);
    }
    throw std::invalid_argument("norm: malformed spec");
}

double phi_moment(const OrliczFunction& phi, const StepFunction& mu) {
    double acc = 0.0;
    for (const Step& s : mu.steps()) acc += phi(s.value) * s.length;
    return acc;
}

double luxemburg_norm(const OrliczFunction& phi, const StepFunction& mu) {
    if (mu.empty()) return 0.0;
    const double top = mu.top_value();
    auto modular = [&](double lambda) {
        double acc = 0.0;
        for (const Step& s : mu.steps()) acc += phi(s.value / lambda) * s.length;
        return acc;
    };
    double lo = 1e-12 * top;
    double hi = 1e12 * top;
    if (modular(hi) > 1.0) throw std::runtime_error("luxemburg_norm: bisection bracket failure");
    if (modular(lo) <= 1.0) return lo;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-10 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (modular(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace ncfa
