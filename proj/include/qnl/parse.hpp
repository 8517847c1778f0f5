#pragma once

// Text forms for functions, spaces and Young functions, plus the key/value
// config-file reader. The function grammar (whitespace-insensitive):
//
//   function  := piece ( '+' piece )*
//   piece     := terms 'on' interval
//              | 'char' interval [ '*' number ]
//   terms     := term ( ('+'|'-') term )*
//   term      := 'const' '(' number ')'
//              | 'powerleft' '(' number ',' number ')'    c (x - a)^(-q)
//              | 'powerright' '(' number ',' number ')'   c (b - x)^(-q)
//   interval  := '(' number ',' number ')'
//
// print_function emits a canonical form that reparses to a structurally
// identical PiecewiseFunction.

#include <cctype>
#include <cstdio>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qnl/errors.hpp"
#include "qnl/nfunction.hpp"
#include "qnl/norms.hpp"
#include "qnl/piecewise.hpp"

namespace qnl {

namespace detail {

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // next character verbatim, no whitespace skipping (for quoted strings)
    char raw_next() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

    void expect(char c) {
        if (!accept(c))
            throw parse_error(std::string("expected '") + c + "' at position " +
                              std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            throw parse_error("expected identifier at position " + std::to_string(start) +
                              " in \"" + s_ + "\"");
        return s_.substr(start, pos_ - start);
    }

    double number() {
        skip_ws();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin)
            throw parse_error("expected number at position " + std::to_string(pos_) +
                              " in \"" + s_ + "\"");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

// ---- function literals --------------------------------------------------------

inline PiecewiseFunction parse_function(const std::string& text) {
    detail::Lexer lx(text);
    std::vector<Piece> pieces;
    while (true) {
        std::string head = lx.ident();
        if (head == "char") {
            lx.expect('(');
            const double a = lx.number();
            lx.expect(',');
            const double b = lx.number();
            lx.expect(')');
            double h = 1.0;
            if (lx.accept('*')) h = lx.number();
            if (h != 0.0)
                pieces.push_back(Piece{a, b, {Term{TermKind::constant, h}}});
        } else {
            std::vector<std::pair<std::string, std::vector<double>>> raw;
            double sign = 1.0;
            while (true) {
                lx.expect('(');
                std::vector<double> args;
                args.push_back(sign * lx.number());
                while (lx.accept(',')) args.push_back(lx.number());
                lx.expect(')');
                raw.emplace_back(head, args);
                if (lx.accept('+')) {
                    sign = 1.0;
                } else if (lx.accept('-')) {
                    sign = -1.0;
                } else {
                    break;
                }
                head = lx.ident();
            }
            const std::string kw = lx.ident();
            if (kw != "on") throw parse_error("expected 'on' in \"" + text + "\"");
            lx.expect('(');
            const double a = lx.number();
            lx.expect(',');
            const double b = lx.number();
            lx.expect(')');
            Piece p{a, b, {}};
            for (const auto& [name, args] : raw) {
                if (name == "const") {
                    if (args.size() != 1) throw parse_error("const takes one argument");
                    p.terms.push_back(Term{TermKind::constant, args[0]});
                } else if (name == "powerleft") {
                    if (args.size() != 2) throw parse_error("powerleft takes (c, q)");
                    p.terms.push_back(Term{TermKind::power_left, args[0], args[1], a});
                } else if (name == "powerright") {
                    if (args.size() != 2) throw parse_error("powerright takes (c, q)");
                    p.terms.push_back(Term{TermKind::power_right, args[0], args[1], b});
                } else {
                    throw parse_error("unknown term '" + name + "'");
                }
            }
            pieces.push_back(std::move(p));
        }
        if (lx.done()) break;
        lx.expect('+');
    }
    try {
        return PiecewiseFunction::make(std::move(pieces));
    } catch (const std::runtime_error& ex) {
        throw parse_error(std::string("invalid function: ") + ex.what());
    }
}

inline std::string print_function(const PiecewiseFunction& f) {
    if (f.is_zero()) return "char(0,1)*0";
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::string out;
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        const Piece& p = f.pieces()[i];
        if (i) out += " + ";
        for (std::size_t j = 0; j < p.terms.size(); ++j) {
            const Term& t = p.terms[j];
            if (j) out += " + ";
            switch (t.kind) {
            case TermKind::constant: out += "const(" + num(t.coeff) + ")"; break;
            case TermKind::power_left:
                out += "powerleft(" + num(t.coeff) + "," + num(t.q) + ")";
                break;
            case TermKind::power_right:
                out += "powerright(" + num(t.coeff) + "," + num(t.q) + ")";
                break;
            }
        }
        out += " on (" + num(p.lo) + "," + num(p.hi) + ")";
    }
    return out;
}

// ---- space and phi literals ----------------------------------------------------

inline NFunction parse_phi(const std::string& text) {
    detail::Lexer lx(text);
    const std::string fam = lx.ident();
    if (fam == "expminus") return NFunction::exp_minus();
    lx.expect(':');
    const double p = lx.number();
    if (fam == "power") return NFunction::power(p);
    if (fam == "powerlog") return NFunction::power_log(p);
    throw parse_error("unknown phi family '" + fam + "'");
}

inline SpaceSpec parse_space(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw parse_error("space literal must look like kind:... , got \"" + text + "\"");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    try {
        if (kind == "lp") return SpaceSpec::lp(std::stod(rest));
        if (kind == "weak-lp") return SpaceSpec::weak_lp(std::stod(rest));
        if (kind == "orlicz") return SpaceSpec::orlicz(parse_phi(rest));
        if (kind == "weak-orlicz") return SpaceSpec::weak_orlicz(parse_phi(rest));
    } catch (const std::invalid_argument&) {
        throw parse_error("bad space parameter in \"" + text + "\"");
    } catch (const domain_error& ex) {
        throw parse_error(std::string("bad space: ") + ex.what());
    }
    throw parse_error("unknown space kind '" + kind + "'");
}

// ---- config files ---------------------------------------------------------------

// One key = value per line; values are numbers, "strings", booleans, or
// inline tables { k = v, ... }. '#' starts a comment.
struct ConfigValue;
using ConfigTable = std::map<std::string, ConfigValue>;

struct ConfigValue {
    std::variant<double, std::string, bool, ConfigTable> v;

    bool is_number() const { return std::holds_alternative<double>(v); }
    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_table() const { return std::holds_alternative<ConfigTable>(v); }

    double number() const {
        if (!is_number()) throw parse_error("config value is not a number");
        return std::get<double>(v);
    }
    const std::string& str() const {
        if (!is_string()) throw parse_error("config value is not a string");
        return std::get<std::string>(v);
    }
    bool boolean() const {
        if (!is_bool()) throw parse_error("config value is not a boolean");
        return std::get<bool>(v);
    }
    const ConfigTable& table() const {
        if (!is_table()) throw parse_error("config value is not a table");
        return std::get<ConfigTable>(v);
    }
};

namespace detail {

inline ConfigValue parse_config_value(Lexer& lx) {
    lx.skip_ws();
    const char c = lx.peek();
    if (c == '"') {
        lx.expect('"');
        std::string s;
        while (true) {
            const char ch = lx.raw_next();
            if (ch == '\0') throw parse_error("unterminated string in config");
            if (ch == '"') break;
            s += ch;
        }
        return ConfigValue{s};
    }
    if (c == '{') {
        lx.expect('{');
        ConfigTable t;
        if (!lx.accept('}')) {
            while (true) {
                const std::string key = lx.ident();
                lx.expect('=');
                t.emplace(key, parse_config_value(lx));
                if (lx.accept('}')) break;
                lx.expect(',');
            }
        }
        return ConfigValue{t};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::string word = lx.ident();
        if (word == "true") return ConfigValue{true};
        if (word == "false") return ConfigValue{false};
        throw parse_error("unexpected word '" + word + "' in config value");
    }
    return ConfigValue{lx.number()};
}

} // namespace detail

inline ConfigTable parse_config(const std::string& text) {
    ConfigTable out;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        detail::Lexer lx(line);
        const std::string key = lx.ident();
        lx.expect('=');
        ConfigValue v = detail::parse_config_value(lx);
        if (!lx.done())
            throw parse_error("trailing characters on config line " + std::to_string(lineno));
        if (!out.emplace(key, std::move(v)).second)
            throw parse_error("duplicate config key '" + key + "'");
    }
    return out;
}

// Builds a SpaceSpec from an inline table { kind = "weak-lp", p = 2.0 } or
// { kind = "weak-orlicz", phi = { family = "power", p = 2 } }.
inline NFunction phi_from_table(const ConfigTable& t) {
    ConfigTable copy = t;
    const auto fam = copy.find("family");
    if (fam == copy.end()) throw parse_error("phi table needs a 'family' key");
    const std::string family = fam->second.str();
    copy.erase("family");
    double p = 0.0;
    bool has_p = false;
    if (auto it = copy.find("p"); it != copy.end()) {
        p = it->second.number();
        has_p = true;
        copy.erase("p");
    }
    if (!copy.empty()) throw parse_error("unknown key '" + copy.begin()->first + "' in phi table");
    if (family == "expminus") return NFunction::exp_minus();
    if (!has_p) throw parse_error("phi family '" + family + "' needs p");
    if (family == "power") return NFunction::power(p);
    if (family == "powerlog") return NFunction::power_log(p);
    throw parse_error("unknown phi family '" + family + "'");
}

inline SpaceSpec space_from_table(const ConfigTable& t) {
    ConfigTable copy = t;
    const auto kind_it = copy.find("kind");
    if (kind_it == copy.end()) throw parse_error("space table needs a 'kind' key");
    const std::string kind = kind_it->second.str();
    copy.erase("kind");
    if (kind == "lp" || kind == "weak-lp") {
        const auto p_it = copy.find("p");
        if (p_it == copy.end()) throw parse_error("space kind '" + kind + "' needs p");
        const double p = p_it->second.number();
        copy.erase("p");
        if (!copy.empty())
            throw parse_error("unknown key '" + copy.begin()->first + "' in space table");
        return kind == "lp" ? SpaceSpec::lp(p) : SpaceSpec::weak_lp(p);
    }
    if (kind == "orlicz" || kind == "weak-orlicz") {
        const auto phi_it = copy.find("phi");
        if (phi_it == copy.end()) throw parse_error("space kind '" + kind + "' needs phi");
        const NFunction phi = phi_from_table(phi_it->second.table());
        copy.erase("phi");
        if (!copy.empty())
            throw parse_error("unknown key '" + copy.begin()->first + "' in space table");
        return kind == "orlicz" ? SpaceSpec::orlicz(phi) : SpaceSpec::weak_orlicz(phi);
    }
    throw parse_error("unknown space kind '" + kind + "'");
}

} // namespace qnl
