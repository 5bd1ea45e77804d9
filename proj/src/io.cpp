#include "toricq/io.hpp"

#include <fstream>
#include <sstream>

namespace toricq {

namespace {

std::string at(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& where, const std::string& key) {
    if (!j.is_object()) throw FormatError(where.empty() ? "top level" : where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(where.empty() ? "top level" : where, "missing field \"" + key + "\"");
    return *it;
}

const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where, "expected an array");
    return j;
}

std::size_t index(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned()) throw FormatError(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

Integer integer_from_json(const Json& j, const std::string& where) {
    const Rational q = rational_from_json(j, where);
    if (q.get_den() != 1) throw FormatError(where, "expected an integer, got " + q.get_str());
    return q.get_num();
}

RatVector rat_vector(const Json& j, const std::string& where, std::size_t len) {
    array(j, where);
    if (j.size() != len) throw FormatError(where, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
    RatVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], at(where, i)));
    return v;
}

IntVector int_vector(const Json& j, const std::string& where, std::size_t len) {
    array(j, where);
    if (j.size() != len) throw FormatError(where, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], at(where, i)));
    return v;
}

RatMatrix rat_matrix(const Json& j, const std::string& where, std::size_t rows, std::size_t cols) {
    array(j, where);
    if (j.size() != rows) throw FormatError(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto r = rat_vector(j[i], at(where, i), cols);
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
    }
    return m;
}

std::string read_all(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // nlohmann reports a byte offset; turn it into line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find(": "); p != std::string::npos && msg.rfind("[json.exception", 0) == 0) msg = msg.substr(p + 2);
        throw FormatError(source + ":" + std::to_string(line) + ":" + std::to_string(col), msg);
    }
}

std::string rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.dump());
    if (j.is_number_float()) throw FormatError(where, "floating-point numbers are not allowed; write \"p/q\"");
    if (!j.is_string()) throw FormatError(where, "expected a rational such as \"3\" or \"-2/3\"");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    const std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw FormatError(where, "malformed rational \"" + s + "\"");
    Integer d(den);
    if (d == 0) throw FormatError(where, "zero denominator in \"" + s + "\"");
    Rational q(Integer(num[0] == '+' ? num.substr(1) : num), d);
    q.canonicalize();
    return q;
}

FanFile fan_file_from_json(const Json& j) {
    FanFile f;
    const Json& rk = field(j, "", "rank");
    f.rank = index(rk, "rank");
    if (f.rank == 0) throw FormatError("rank", "rank must be positive");
    const Json& rays = array(field(j, "", "rays"), "rays");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        f.rays.push_back(rat_vector(rays[i], at("rays", i), f.rank));
        if (is_zero(std::span<const Rational>(f.rays.back()))) throw FormatError(at("rays", i), "ray is zero");
    }
    const Json& cones = array(field(j, "", "cones"), "cones");
    if (cones.empty()) throw FormatError("cones", "at least one cone is required");
    for (std::size_t c = 0; c < cones.size(); ++c) {
        const std::string w = at("cones", c);
        std::vector<RatVector> gens;
        const Json& g = array(field(cones[c], w, "generators"), at(w, "generators"));
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::size_t r = index(g[i], at(at(w, "generators"), i));
            if (r >= f.rays.size())
                throw FormatError(at(at(w, "generators"), i), "ray index " + std::to_string(r) + " out of range (" + std::to_string(f.rays.size()) + " rays)");
            gens.push_back(f.rays[r]);
        }
        if (cones[c].contains("lineality")) {
            const Json& l = array(cones[c]["lineality"], at(w, "lineality"));
            for (std::size_t i = 0; i < l.size(); ++i) {
                RatVector v = rat_vector(l[i], at(at(w, "lineality"), i), f.rank);
                RatVector neg(v);
                for (auto& x : neg) x = -x;
                gens.push_back(std::move(v));
                gens.push_back(std::move(neg));
            }
        }
        f.cones.push_back(Cone::from_generators(f.rank, gens));
    }
    if (j.contains("support_maps")) {
        const Json& maps = j["support_maps"];
        if (!maps.is_object()) throw FormatError("support_maps", "expected an object of named maps");
        for (const auto& [name, m] : maps.items()) {
            const std::string w = at("support_maps", name);
            MapSpec s;
            s.k = index(field(m, w, "k"), at(w, "k"));
            const Json& mats = array(field(m, w, "matrices"), at(w, "matrices"));
            if (mats.size() != f.cones.size())
                throw FormatError(at(w, "matrices"), "expected one matrix per listed cone (" + std::to_string(f.cones.size()) + ")");
            for (std::size_t i = 0; i < mats.size(); ++i) s.matrices.push_back(rat_matrix(mats[i], at(at(w, "matrices"), i), s.k, f.rank));
            f.maps[name] = std::move(s);
        }
    }
    if (j.contains("subtorus")) {
        const Json& b = array(field(j["subtorus"], "subtorus", "basis"), "subtorus.basis");
        std::vector<IntVector> basis;
        for (std::size_t i = 0; i < b.size(); ++i) basis.push_back(int_vector(b[i], at("subtorus.basis", i), f.rank));
        f.subtorus = std::move(basis);
    }
    return f;
}

FanFile read_fan_file(const std::string& path) { return fan_file_from_json(parse_json(read_all(path), path)); }

Quasifan FanFile::fan() const {
    const ValidationReport rep = validate(rank, cones);
    if (!rep.valid) throw InputError("cones do not form a quasifan: " + rep.message);
    return Quasifan::from_cones(rank, cones);
}

SupportMap FanFile::map(const std::string& name) const {
    if (maps.empty()) throw InputError("the file defines no support map");
    const MapSpec* s = nullptr;
    if (name.empty()) {
        if (maps.size() > 1) throw InputError("the file defines several support maps; choose one with --map");
        s = &maps.begin()->second;
    } else {
        auto it = maps.find(name);
        if (it == maps.end()) throw InputError("no support map named \"" + name + "\"");
        s = &it->second;
    }
    std::vector<std::pair<Cone, RatMatrix>> data;
    for (std::size_t i = 0; i < cones.size(); ++i) data.push_back({cones[i], s->matrices[i]});
    return SupportMap::from_cone_matrices(fan(), s->k, data);
}

Json to_json(std::span<const Integer> v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

Json to_json(const Cone& c) {
    Json j;
    j["rays"] = Json::array();
    for (const auto& r : c.rays()) j["rays"].push_back(to_json(r));
    j["lineality"] = Json::array();
    for (const auto& l : c.lineality()) j["lineality"].push_back(to_json(l));
    return j;
}

Json to_json(const Quasifan& q) {
    Json j;
    j["rank"] = q.rank();
    const auto rays = q.rays();
    j["rays"] = Json::array();
    for (const auto& r : rays) j["rays"].push_back(to_json(r));
    j["cones"] = Json::array();
    for (const auto& c : q.maximal_cones()) {
        Json e;
        e["generators"] = Json::array();
        for (const auto& r : c.rays()) e["generators"].push_back(std::find(rays.begin(), rays.end(), r) - rays.begin());
        if (!c.lineality().empty()) {
            e["lineality"] = Json::array();
            for (const auto& l : c.lineality()) e["lineality"].push_back(to_json(l));
        }
        j["cones"].push_back(std::move(e));
    }
    return j;
}

Json to_json(const RatMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (const auto& x : m.row(i)) r.push_back(rational_to_json(x));
        a.push_back(std::move(r));
    }
    return a;
}

Json to_json(const IntMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

Json to_json(const SupportMap& h) {
    Json j;
    j["k"] = h.k();
    j["matrices"] = Json::array();
    for (const auto& m : h.matrices()) j["matrices"].push_back(to_json(m));
    return j;
}

Quasifan fan_from_json(const Json& j) { return fan_file_from_json(j).fan(); }

SupportMap support_map_from_json(const Json& j, const Quasifan& source) {
    const std::size_t k = index(field(j, "support_map", "k"), "support_map.k");
    const Json& mats = array(field(j, "support_map", "matrices"), "support_map.matrices");
    if (mats.size() != source.maximal_cones().size())
        throw FormatError("support_map.matrices", "expected one matrix per maximal cone (" + std::to_string(source.maximal_cones().size()) + ")");
    std::vector<RatMatrix> ms;
    for (std::size_t i = 0; i < mats.size(); ++i) ms.push_back(rat_matrix(mats[i], at("support_map.matrices", i), k, source.rank()));
    return SupportMap(source, k, std::move(ms));
}

IntMatrix int_matrix_from_json(const Json& j, const std::string& where) {
    array(j, where);
    if (j.empty()) return IntMatrix();
    const std::size_t cols = array(j[0], at(where, 0)).size();
    IntMatrix m(0, cols);
    for (std::size_t i = 0; i < j.size(); ++i) m.append_row(int_vector(j[i], at(where, i), cols));
    return m;
}

Json certificate_to_json(const Quasifan& fan, const DivisorialityCertificate& cert) {
    Json j;
    j["format"] = "toricq-certificate";
    j["version"] = 1;
    j["kind"] = "divisoriality";
    j["fan"] = to_json(fan);
    j["divisorial"] = cert.divisorial;
    if (cert.divisorial) {
        j["support_map"] = to_json(*cert.map);
    } else {
        j["refutations"] = Json::array();
        for (const auto& r : cert.refutations) {
            Json e;
            e["cone"] = r.cone;
            e["cone_rays"] = to_json(fan.maximal_cones()[r.cone])["rays"];
            e["farkas"] = Json::array();
            for (const auto& y : r.farkas) e["farkas"].push_back(rational_to_json(y));
            j["refutations"].push_back(std::move(e));
        }
    }
    return j;
}

DivisorialityCertificate certificate_from_json(const Json& j, const Quasifan& fan) {
    const Json& kind = field(j, "", "kind");
    if (kind != "divisoriality") throw FormatError("kind", "unsupported certificate kind " + kind.dump());
    const Quasifan cf = fan_from_json(field(j, "", "fan"));
    if (!(cf == fan)) throw InputError("certificate was issued for a different fan");
    DivisorialityCertificate cert;
    const Json& d = field(j, "", "divisorial");
    if (!d.is_boolean()) throw FormatError("divisorial", "expected true or false");
    cert.divisorial = d.get<bool>();
    if (cert.divisorial) {
        cert.map = support_map_from_json(field(j, "", "support_map"), fan);
    } else {
        const Json& rs = array(field(j, "", "refutations"), "refutations");
        for (std::size_t i = 0; i < rs.size(); ++i) {
            const std::string w = at("refutations", i);
            Refutation r;
            r.cone = index(field(rs[i], w, "cone"), at(w, "cone"));
            const Json& y = array(field(rs[i], w, "farkas"), at(w, "farkas"));
            for (std::size_t t = 0; t < y.size(); ++t) r.farkas.push_back(rational_from_json(y[t], at(at(w, "farkas"), t)));
            cert.refutations.push_back(std::move(r));
        }
    }
    return cert;
}

namespace {

Json optional_cone(const std::optional<Cone>& c) { return c ? to_json(*c) : Json(nullptr); }

Json fan_map_json(const FanMap& m) {
    Json j;
    j["matrix"] = to_json(m.matrix);
    j["target"] = to_json(m.target);
    return j;
}

}  // namespace

Json to_json(const ReductionResult& r) {
    Json j = fan_map_json(r.map);
    j["lattice"] = Json::array();
    for (const auto& b : r.lattice) j["lattice"].push_back(to_json(b));
    j["coarsenings"] = Json::array();
    for (std::size_t i = 0; i < r.coarsenings.size(); ++i) {
        const auto& c = r.coarsenings[i];
        Json e;
        e["quasifan"] = to_json(c.sigma);
        e["projection"] = to_json(c.quotient.projection);
        e["quotient_fan"] = to_json(c.quotient.fan);
        e["quotient_map"] = to_json(c.quotient_map);
        e["factorization"] = to_json(r.factorizations[i]);
        j["coarsenings"].push_back(std::move(e));
    }
    j["surjective"] = r.surjective;
    j["obstruction"] = optional_cone(r.obstruction);
    return j;
}

Json to_json(const ToricQuotient& q) {
    Json j = fan_map_json(q.map);
    j["projection"] = to_json(q.projection);
    j["merged"] = to_json(q.merged);
    return j;
}

Json to_json(const QuotientDecision& d) {
    Json j;
    j["quotient"] = to_json(d.quotient);
    j["reduction"] = to_json(d.reduction);
    j["composed"] = fan_map_json(d.composed);
    j["exists"] = d.exists;
    j["obstruction"] = optional_cone(d.obstruction);
    j["source_divisorial"] = d.source_divisorial;
    return j;
}

}  // namespace toricq
