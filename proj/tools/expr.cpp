#include "expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "lgate/analytic.hpp"

namespace lgate::cli {
namespace {

using Kind = Expr::Kind;

ExprPtr make(Kind kind, double value, std::vector<ExprPtr> args = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->value = value;
    e->args = std::move(args);
    return e;
}

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
    }
    return out;
}

class Parser {
public:
    Parser(std::string_view text, std::string_view var) : text_(text), var_(var) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail({"operator", "end of input"});
        return e;
    }

private:
    std::string_view text_;
    std::string_view var_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail = {}) {
        throw ParseError(pos_, std::move(expected), detail);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make(Kind::add, 0.0, {lhs, term()});
            } else if (accept('-')) {
                lhs = make(Kind::sub, 0.0, {lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Kind::mul, 0.0, {lhs, unary()});
            } else if (accept('/')) {
                lhs = make(Kind::div, 0.0, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary() {
        if (accept('-')) return make(Kind::neg, 0.0, {unary()});
        return factor();
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (accept('^')) {
            skip_space();
            double sign = 1.0;
            if (accept('-')) {
                sign = -1.0;
            } else {
                accept('+');
            }
            skip_space();
            const double value = number({"number"});
            return make(Kind::pow, sign * value, {b});
        }
        return b;
    }

    double number(std::vector<std::string> expected) {
        skip_space();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        auto digits = [&] {
            const std::size_t from = p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
            return p - from;
        };
        std::size_t count = digits();
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            count += digits();
        }
        if (count == 0) fail(std::move(expected));
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
                p = q;
                digits();
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + p, value);
        if (ec != std::errc{} || ptr != text_.data() + p || !std::isfinite(value)) {
            fail({"finite number"}, "number out of range");
        }
        pos_ = p;
        return value;
    }

    ExprPtr base() {
        skip_space();
        const std::vector<std::string> starts = {"number", "'" + std::string(var_) + "'",
                                                        "'exp'", "'('"};
        if (pos_ >= text_.size()) fail(starts);
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return make(Kind::constant, number(starts));
        }
        if (c == '(') {
            ++pos_;
            ExprPtr inner = expr();
            if (!accept(')')) fail({"')'"});
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t p = pos_;
            while (p < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_')) {
                ++p;
            }
            const std::string_view word = text_.substr(pos_, p - pos_);
            if (word == var_) {
                pos_ = p;
                return make(Kind::variable, 0.0);
            }
            if (word == "exp") {
                pos_ = p;
                if (!accept('(')) fail({"'('"});
                ExprPtr arg = expr();
                if (!accept(')')) fail({"')'"});
                return make(Kind::exp, 0.0, {arg});
            }
            fail(starts, "unknown identifier '" + std::string(word) + "'");
        }
        fail(starts);
    }
};

bool is_small_integer(double x) {
    return x == std::floor(x) && std::abs(x) <= 64.0;
}

Complex integer_power(Complex z, double n) {
    const bool invert = n < 0;
    auto k = static_cast<unsigned>(std::abs(n));
    Complex result{1.0, 0.0};
    while (k > 0) {
        if (k & 1u) result *= z;
        z *= z;
        k >>= 1u;
    }
    return invert ? Complex{1.0, 0.0} / result : result;
}

std::string format_number(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), ptr);
}

using Terms = std::vector<ExpTerm>;

Terms normalise(Terms terms) {
    std::map<std::pair<double, double>, double> merged;
    for (const auto& t : terms) merged[{t.power, t.rate}] += t.coeff;
    Terms out;
    for (const auto& [key, coeff] : merged) {
        if (coeff != 0.0) out.push_back({coeff, key.first, key.second});
    }
    return out;
}

Terms multiply(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& x : a) {
        for (const auto& y : b) out.push_back({x.coeff * y.coeff, x.power + y.power, x.rate + y.rate});
    }
    return normalise(std::move(out));
}

std::optional<Terms> expand(const Expr& e) {
    switch (e.kind) {
        case Kind::constant:
            return normalise({{e.value, 0.0, 0.0}});
        case Kind::variable:
            return Terms{{1.0, 1.0, 0.0}};
        case Kind::add:
        case Kind::sub: {
            auto a = expand(*e.args[0]);
            auto b = expand(*e.args[1]);
            if (!a || !b) return std::nullopt;
            for (auto t : *b) {
                if (e.kind == Kind::sub) t.coeff = -t.coeff;
                a->push_back(t);
            }
            return normalise(std::move(*a));
        }
        case Kind::neg: {
            auto a = expand(*e.args[0]);
            if (!a) return std::nullopt;
            for (auto& t : *a) t.coeff = -t.coeff;
            return a;
        }
        case Kind::mul: {
            auto a = expand(*e.args[0]);
            auto b = expand(*e.args[1]);
            if (!a || !b) return std::nullopt;
            return multiply(*a, *b);
        }
        case Kind::div: {
            auto a = expand(*e.args[0]);
            auto b = expand(*e.args[1]);
            if (!a || !b || b->size() != 1) return std::nullopt;
            const ExpTerm d = b->front();
            return multiply(*a, {{1.0 / d.coeff, -d.power, -d.rate}});
        }
        case Kind::pow: {
            auto a = expand(*e.args[0]);
            if (!a) return std::nullopt;
            const double n = e.value;
            if (a->size() == 1) {
                const ExpTerm b = a->front();
                if (b.coeff < 0.0 && n != std::floor(n)) return std::nullopt;
                return normalise({{std::pow(b.coeff, n), b.power * n, b.rate * n}});
            }
            if (n < 0.0 || n > 16.0 || n != std::floor(n)) return std::nullopt;
            Terms result{{1.0, 0.0, 0.0}};
            for (int k = 0; k < static_cast<int>(n); ++k) result = multiply(result, *a);
            return result;
        }
        case Kind::exp: {
            auto a = expand(*e.args[0]);
            if (!a) return std::nullopt;
            double c0 = 0.0, c1 = 0.0;
            for (const auto& t : *a) {
                if (t.rate != 0.0) return std::nullopt;
                if (t.power == 0.0) {
                    c0 += t.coeff;
                } else if (t.power == 1.0) {
                    c1 += t.coeff;
                } else {
                    return std::nullopt;
                }
            }
            return normalise({{std::exp(c0), 0.0, -c1}});
        }
    }
    return std::nullopt;
}

// sup over t >= 1 of |c| t^nu e^{-a t / 2} (t >= 1 only matters for nu < 0)
double half_rate_amplitude(const ExpTerm& t) {
    const double c = std::abs(t.coeff);
    if (t.power <= 0.0) return c;
    const double peak = 2.0 * t.power / t.rate;
    return c * std::pow(peak, t.power) * std::exp(-t.power);
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : std::runtime_error("parse error at offset " + std::to_string(offset) +
                         (detail.empty() ? std::string{} : ": " + detail) + "; expected " +
                         join_expected(expected)),
      offset_(offset),
      expected_(std::move(expected)) {}

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    if ((a.kind == Kind::constant || a.kind == Kind::pow) && a.value != b.value) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!(*a.args[i] == *b.args[i])) return false;
    }
    return true;
}

ExprPtr parse_expr(std::string_view text, std::string_view variable_name) {
    return Parser(text, variable_name).parse();
}

Complex evaluate(const Expr& e, Complex x) {
    switch (e.kind) {
        case Kind::constant:
            return {e.value, 0.0};
        case Kind::variable:
            return x;
        case Kind::add:
            return evaluate(*e.args[0], x) + evaluate(*e.args[1], x);
        case Kind::sub:
            return evaluate(*e.args[0], x) - evaluate(*e.args[1], x);
        case Kind::mul:
            return evaluate(*e.args[0], x) * evaluate(*e.args[1], x);
        case Kind::div:
            return evaluate(*e.args[0], x) / evaluate(*e.args[1], x);
        case Kind::neg:
            return -evaluate(*e.args[0], x);
        case Kind::pow: {
            const Complex b = evaluate(*e.args[0], x);
            if (is_small_integer(e.value)) return integer_power(b, e.value);
            return principal_power(b, e.value);
        }
        case Kind::exp:
            return std::exp(evaluate(*e.args[0], x));
    }
    return {};
}

std::string to_string(const Expr& e, std::string_view var) {
    auto sub = [&](std::size_t i) { return to_string(*e.args[i], var); };
    switch (e.kind) {
        case Kind::constant:
            return format_number(e.value);
        case Kind::variable:
            return std::string(var);
        case Kind::add:
            return "(" + sub(0) + " + " + sub(1) + ")";
        case Kind::sub:
            return "(" + sub(0) + " - " + sub(1) + ")";
        case Kind::mul:
            return "(" + sub(0) + " * " + sub(1) + ")";
        case Kind::div:
            return "(" + sub(0) + " / " + sub(1) + ")";
        case Kind::neg:
            return "(-" + sub(0) + ")";
        case Kind::pow: {
            std::string b = sub(0);
            if (e.args[0]->kind == Kind::pow || e.args[0]->kind == Kind::constant) b = "(" + b + ")";
            return b + "^" + format_number(e.value);
        }
        case Kind::exp:
            return "exp(" + sub(0) + ")";
    }
    return {};
}

std::optional<std::vector<ExpTerm>> as_exp_polynomial(const Expr& e) {
    return expand(e);
}

TransformFunction transform_from_expr(ExprPtr e, std::string label) {
    return make_transform([e](Complex p) { return evaluate(*e, p); }, std::move(label));
}

TimeDomainInput laplace_of_exp_polynomial(const std::vector<ExpTerm>& terms, std::string label) {
    double M = 0.0;
    double gamma_rate = terms.empty() ? 1.0 : std::numeric_limits<double>::infinity();
    std::vector<double> weights;
    for (const auto& t : terms) {
        if (!(t.rate > 0.0)) {
            throw std::invalid_argument("every term of f needs a decaying factor exp(-a*t) with a > 0");
        }
        if (!(t.power > -1.0)) {
            throw std::invalid_argument("every power of t in f must exceed -1");
        }
        weights.push_back(t.coeff * gamma(t.power + 1.0));
        M += half_rate_amplitude(t);
        gamma_rate = std::min(gamma_rate, 0.5 * t.rate);
    }

    TimeDomainInput out;
    out.f.label = label;
    out.f.tail = TailEnvelope::exponential(M, gamma_rate);
    out.f.evaluator = [terms](double t) -> Complex {
        if (t < 0.0) return {0.0, 0.0};
        double sum = 0.0;
        for (const auto& term : terms) sum += term.coeff * std::pow(t, term.power) * std::exp(-term.rate * t);
        return {sum, 0.0};
    };
    out.F = make_transform(
        [terms, weights](Complex p) {
            Complex sum{0.0, 0.0};
            for (std::size_t k = 0; k < terms.size(); ++k) {
                const double order = -(terms[k].power + 1.0);
                const Complex z = p + terms[k].rate;
                sum += weights[k] *
                       (is_small_integer(order) ? integer_power(z, order) : principal_power(z, order));
            }
            return sum;
        },
        std::move(label));
    return out;
}

TailEnvelope tail_from_expr(const Expr& e) {
    const auto terms = as_exp_polynomial(e);
    if (!terms || terms->size() != 1) {
        throw std::invalid_argument("tail must be a single term M*t^k*exp(-g*t) or M*t^-rho");
    }
    const ExpTerm t = terms->front();
    if (t.rate > 0.0) {
        if (t.power > 0.0) return TailEnvelope::exponential(half_rate_amplitude(t), 0.5 * t.rate);
        return TailEnvelope::exponential(std::abs(t.coeff), t.rate);
    }
    if (t.rate == 0.0 && t.power < 0.0) return TailEnvelope::algebraic(std::abs(t.coeff), -t.power);
    throw std::invalid_argument("tail envelope must decay as t grows");
}

}  // namespace lgate::cli
