#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commutator.hpp"
#include "decomp.hpp"
#include "errors.hpp"
#include "pcmap.hpp"
#include "saf.hpp"
#include "witness.hpp"

namespace pcgroup {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace detail

/// "Q" or "Q(sqrt d)".
inline FieldSpec parse_field(std::string_view text) {
    std::string t = detail::trim(text);
    if (t == "Q") return FieldSpec::rationals();
    const std::string pre = "Q(sqrt";
    if (t.rfind(pre, 0) == 0 && t.back() == ')') {
        std::string num = detail::trim(std::string_view(t).substr(pre.size(), t.size() - pre.size() - 1));
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad field '" + t + "'");
        return FieldSpec::quadratic(std::stol(num));
    }
    throw ParseError("bad field '" + t + "'");
}

inline std::string print_piece(const Piece& p) {
    return "[" + p.lo.str() + ", " + p.hi.str() + ") : " + p.slope.str() + " , " + p.intercept.str();
}

/// `[lo, hi) : slope , intercept`
inline Piece parse_piece(std::string_view line, const FieldSpec& F) {
    std::string s = detail::trim(line);
    std::size_t colon = s.find(':');
    if (s.empty() || s[0] != '[' || colon == std::string::npos) throw ParseError("bad piece line '" + s + "'");
    std::string dom = detail::trim(std::string_view(s).substr(1, colon - 1));
    if (dom.empty() || dom.back() != ')') throw ParseError("piece domain must end with ')' in '" + s + "'");
    dom.pop_back();
    std::size_t c1 = dom.find(',');
    std::string law = s.substr(colon + 1);
    std::size_t c2 = law.find(',');
    if (c1 == std::string::npos || c2 == std::string::npos) throw ParseError("bad piece line '" + s + "'");
    return {parse_scalar(dom.substr(0, c1), F), parse_scalar(dom.substr(c1 + 1), F), parse_scalar(law.substr(0, c2), F),
            parse_scalar(law.substr(c2 + 1), F)};
}

inline std::vector<std::string> piece_lines(const PwMap& f) {
    std::vector<std::string> out;
    for (const auto& p : f.pieces()) out.push_back(print_piece(p));
    return out;
}

inline std::string print_map(const PwMap& f) {
    std::string out = "field " + f.field().to_string() + "\n";
    for (const auto& l : piece_lines(f)) out += l + "\n";
    return out;
}

inline PwMap map_from_lines(const std::vector<std::string>& lines, const FieldSpec& F) {
    std::vector<Piece> ps;
    for (const auto& l : lines) ps.push_back(parse_piece(l, F));
    return PwMap::canonicalize(std::move(ps), F);
}

/// Map document; without a `field` header the default field applies.
inline PwMap parse_map(const std::string& text, const FieldSpec& default_field = {}) {
    std::optional<FieldSpec> F;
    std::vector<std::string> body;
    for (const auto& raw : detail::lines_of(text)) {
        std::string line = raw.substr(0, raw.find('#'));
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.rfind("field", 0) == 0) {
            if (F || !body.empty()) throw ParseError("misplaced field header");
            F = parse_field(std::string_view(line).substr(5));
            continue;
        }
        body.push_back(line);
    }
    if (body.empty()) throw ParseError("map document has no pieces");
    return map_from_lines(body, F.value_or(default_field));
}

/// Maps separated by lines consisting of `---`.
inline std::vector<PwMap> parse_maps(const std::string& text, const FieldSpec& default_field = {}) {
    std::vector<PwMap> out;
    std::string cur;
    for (const auto& raw : detail::lines_of(text)) {
        if (detail::trim(raw) == "---") {
            out.push_back(parse_map(cur, default_field));
            cur.clear();
        } else {
            cur += raw + "\n";
        }
    }
    out.push_back(parse_map(cur, default_field));
    return out;
}

inline std::string print_maps(const std::vector<PwMap>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? "---\n" : "") + print_map(fs[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Slope specs

inline std::string print_slopes(const SlopeSpec& s) { return "slopes " + s.to_string() + "\n"; }

inline std::vector<long> parse_generator_list(const std::string& text) {
    std::vector<long> gens;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = detail::trim(tok);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad generator '" + tok + "'");
        gens.push_back(std::stol(tok));
    }
    return gens;
}

inline SlopeSpec parse_slopes(const std::string& text) {
    std::string t = detail::trim(text);
    if (t.rfind("slopes", 0) != 0) throw ParseError("slope document must start with 'slopes'");
    return SlopeSpec(parse_generator_list(t.substr(6)));
}

// ---------------------------------------------------------------------------
// JSON documents

namespace detail {

inline Json map_json(const PwMap& f) { return Json(piece_lines(f)); }

inline PwMap map_of_json(const Json& j, const FieldSpec& F) {
    if (!j.is_array()) throw ParseError("map must be an array of piece lines");
    std::vector<std::string> lines;
    for (const auto& l : j) {
        if (!l.is_string()) throw ParseError("piece line must be a string");
        lines.push_back(l.get<std::string>());
    }
    return map_from_lines(lines, F);
}

inline const Json& field_of(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
}

template <class T>
T get_as(const Json& j, const char* key) {
    const Json& v = field_of(j, key);
    try {
        return v.get<T>();
    } catch (const Json::exception&) {
        throw ParseError(std::string("bad value for '") + key + "'");
    }
}

}  // namespace detail

inline std::string print_witness(const Witness& w) {
    Json j;
    j["format"] = "pcgroup-certificate/1";
    j["field"] = w.base.field().to_string();
    j["group"] = w.group.name();
    j["theorem"] = theorem_name(w.theorem);
    j["claimed_bound"] = w.claimed_bound;
    j["base"] = detail::map_json(w.base);
    j["target"] = detail::map_json(w.target);
    Json es = Json::array();
    for (const auto& e : w.entries) es.push_back(Json{{"exponent", e.eps}, {"conjugator", detail::map_json(e.k)}});
    j["entries"] = es;
    return detail::dump(j);
}

inline Witness parse_witness(const std::string& text) {
    Json j = detail::parse_json(text);
    if (detail::get_as<std::string>(j, "format") != "pcgroup-certificate/1") throw ParseError("unknown certificate format");
    FieldSpec F = parse_field(detail::get_as<std::string>(j, "field"));
    auto G = parse_group(detail::get_as<std::string>(j, "group"));
    if (!G) throw ParseError("unknown group");
    std::string th = detail::get_as<std::string>(j, "theorem");
    if (th != "th0" && th != "th1") throw ParseError("unknown theorem tag '" + th + "'");
    Witness w;
    w.group = *G;
    w.theorem = th == "th0" ? Theorem::th0 : Theorem::th1;
    w.claimed_bound = detail::get_as<std::size_t>(j, "claimed_bound");
    w.base = detail::map_of_json(detail::field_of(j, "base"), F);
    w.target = detail::map_of_json(detail::field_of(j, "target"), F);
    const Json& es = detail::field_of(j, "entries");
    if (!es.is_array()) throw ParseError("entries must be an array");
    for (const auto& e : es) {
        WitnessEntry we;
        we.eps = detail::get_as<int>(e, "exponent");
        we.k = detail::map_of_json(detail::field_of(e, "conjugator"), F);
        w.entries.push_back(std::move(we));
    }
    return w;
}

inline std::string print_factorization(const Factorization& f) {
    Json j;
    j["format"] = "pcgroup-factorization/1";
    j["field"] = f.field.to_string();
    Json fs = Json::array();
    for (std::size_t i = 0; i < f.factors.size(); ++i)
        fs.push_back(Json{{"kind", f.kinds[i]}, {"map", detail::map_json(f.factors[i])}});
    j["factors"] = fs;
    return detail::dump(j);
}

inline Factorization parse_factorization(const std::string& text) {
    Json j = detail::parse_json(text);
    if (detail::get_as<std::string>(j, "format") != "pcgroup-factorization/1") throw ParseError("unknown factorization format");
    Factorization f;
    f.field = parse_field(detail::get_as<std::string>(j, "field"));
    const Json& fs = detail::field_of(j, "factors");
    if (!fs.is_array()) throw ParseError("factors must be an array");
    for (const auto& x : fs) {
        f.factors.push_back(detail::map_of_json(detail::field_of(x, "map"), f.field));
        f.kinds.push_back(detail::get_as<std::string>(x, "kind"));
    }
    return f;
}

inline std::string print_commutators(const std::vector<CommutatorPair>& ps, const FieldSpec& F) {
    Json j;
    j["format"] = "pcgroup-commutators/1";
    j["field"] = F.to_string();
    Json arr = Json::array();
    for (const auto& p : ps) arr.push_back(Json{{"a", detail::map_json(p.a)}, {"b", detail::map_json(p.b)}});
    j["pairs"] = arr;
    return detail::dump(j);
}

inline std::vector<CommutatorPair> parse_commutators(const std::string& text) {
    Json j = detail::parse_json(text);
    if (detail::get_as<std::string>(j, "format") != "pcgroup-commutators/1") throw ParseError("unknown commutator format");
    FieldSpec F = parse_field(detail::get_as<std::string>(j, "field"));
    std::vector<CommutatorPair> out;
    const Json& arr = detail::field_of(j, "pairs");
    if (!arr.is_array()) throw ParseError("pairs must be an array");
    for (const auto& p : arr)
        out.push_back({detail::map_of_json(detail::field_of(p, "a"), F), detail::map_of_json(detail::field_of(p, "b"), F)});
    return out;
}

inline std::string print_saf(const SAFValue& v) { return v.str(); }

}  // namespace pcgroup
