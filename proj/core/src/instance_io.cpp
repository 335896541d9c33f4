#include "wmlab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "wmlab/sha256.hpp"

namespace wmlab {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::SchemaError, where + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) schema_fail(where, std::string("missing key '") + key + "'");
    return *it;
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_fail(where, "expected integer");
    return j.get<int>();
}

std::size_t as_count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long>() < 0) schema_fail(where, "expected count");
    return j.get<std::size_t>();
}

Rational scalar_from_json(const json& j, const std::string& where) {
    if (!j.is_string()) schema_fail(where, "scalars serialize as strings");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        schema_fail(where, e.what());
    }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(to_string(m(r, c)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) schema_fail(where, "matrix must be an object");
    std::size_t rows = as_count(need(j, "rows", where), where);
    std::size_t cols = as_count(need(j, "cols", where), where);
    const json& entries = need(j, "entries", where);
    if (!entries.is_array() || entries.size() != rows * cols)
        schema_fail(where, "entry count does not match declared shape");
    std::vector<Rational> data;
    data.reserve(rows * cols);
    for (const auto& e : entries) data.push_back(scalar_from_json(e, where));
    return Matrix(rows, cols, std::move(data));
}

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "parse error at byte " << e.byte << ": " << e.what();
        throw Error(ErrorKind::SchemaError, os.str());
    }
    if (!j.is_object()) schema_fail("document", "top level must be an object");
    std::string version = need(j, "format_version", "document").get<std::string>();
    if (version != kFormatVersion)
        schema_fail("document", "unsupported format_version '" + version + "'");
    Document doc;
    doc.kind = need(j, "kind", "document").get<std::string>();
    doc.payload = need(j, "payload", "document");
    return doc;
}

Document parse_document_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::SchemaError, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

namespace {

std::map<int, std::size_t> dims1_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "dims must be an array of [degree, dim]");
    std::map<int, std::size_t> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) schema_fail(where, "dims entries are [degree, dim]");
        out[as_int(e[0], where)] = as_count(e[1], where);
    }
    return out;
}

std::map<int, Matrix> maps1_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected array of [degree, matrix]");
    std::map<int, Matrix> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) schema_fail(where, "entries are [degree, matrix]");
        out[as_int(e[0], where)] = matrix_from_json(e[1], where);
    }
    return out;
}

json dims1_to_json(const std::map<int, std::size_t>& dims) {
    json a = json::array();
    for (const auto& [k, v] : dims) a.push_back(json::array({k, v}));
    return a;
}

json maps1_to_json(const std::map<int, Matrix>& maps) {
    json a = json::array();
    for (const auto& [k, v] : maps) a.push_back(json::array({k, matrix_to_json(v)}));
    return a;
}

std::map<Slot, std::size_t> dims2_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "dims must be an array of [i, j, dim]");
    std::map<Slot, std::size_t> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) schema_fail(where, "dims entries are [i, j, dim]");
        out[{as_int(e[0], where), as_int(e[1], where)}] = as_count(e[2], where);
    }
    return out;
}

std::map<Slot, Matrix> maps2_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected array of [i, j, matrix]");
    std::map<Slot, Matrix> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) schema_fail(where, "entries are [i, j, matrix]");
        out[{as_int(e[0], where), as_int(e[1], where)}] = matrix_from_json(e[2], where);
    }
    return out;
}

json dims2_to_json(const std::map<Slot, std::size_t>& dims) {
    json a = json::array();
    for (const auto& [s, v] : dims) a.push_back(json::array({s.first, s.second, v}));
    return a;
}

json maps2_to_json(const std::map<Slot, Matrix>& maps) {
    json a = json::array();
    for (const auto& [s, v] : maps)
        a.push_back(json::array({s.first, s.second, matrix_to_json(v)}));
    return a;
}

void check_matrix_shape(const Matrix& m, std::size_t rows, std::size_t cols,
                        const std::string& where) {
    if (m.rows() != rows || m.cols() != cols)
        schema_fail(where, "matrix shape disagrees with declared dims");
}

}  // namespace

GradedDoc load_graded(const Document& doc) {
    if (doc.kind != "graded") schema_fail("graded", "kind mismatch: " + doc.kind);
    const json& p = doc.payload;
    GradedDoc out;
    auto dims = dims1_from_json(need(p, "dims", "graded.dims"), "graded.dims");
    auto lmaps = p.contains("L") ? maps1_from_json(p["L"], "graded.L") : std::map<int, Matrix>{};
    // cross-check shapes before construction for a precise message
    for (const auto& [j, m] : lmaps) {
        std::size_t dj = dims.count(j) ? dims.at(j) : 0;
        std::size_t dj2 = dims.count(j + 2) ? dims.at(j + 2) : 0;
        check_matrix_shape(m, dj2, dj, "graded.L[" + std::to_string(j) + "]");
    }
    out.module = GradedModule(dims, lmaps);
    if (p.contains("n")) out.n = as_int(p["n"], "graded.n");
    if (p.contains("pairing"))
        out.pairing = make_pairing(out.module, maps1_from_json(p["pairing"], "graded.pairing"));
    return out;
}

BigradedDoc load_bigraded(const Document& doc) {
    if (doc.kind != "bigraded") schema_fail("bigraded", "kind mismatch: " + doc.kind);
    const json& p = doc.payload;
    auto dims = dims2_from_json(need(p, "dims", "bigraded.dims"), "bigraded.dims");
    auto at = [&](Slot s) -> std::size_t {
        auto it = dims.find(s);
        return it == dims.end() ? 0 : it->second;
    };
    auto nmaps = p.contains("N") ? maps2_from_json(p["N"], "bigraded.N") : std::map<Slot, Matrix>{};
    auto lmaps = p.contains("L") ? maps2_from_json(p["L"], "bigraded.L") : std::map<Slot, Matrix>{};
    auto dmaps = p.contains("d") ? maps2_from_json(p["d"], "bigraded.d") : std::map<Slot, Matrix>{};
    for (const auto& [s, m] : nmaps)
        check_matrix_shape(m, at({s.first - 2, s.second}), at(s), "bigraded.N");
    for (const auto& [s, m] : lmaps)
        check_matrix_shape(m, at({s.first, s.second + 2}), at(s), "bigraded.L");
    for (const auto& [s, m] : dmaps)
        check_matrix_shape(m, at({s.first - 1, s.second + 1}), at(s), "bigraded.d");
    BigradedDoc out;
    out.module = BigradedModule(dims, nmaps, lmaps);
    out.differential.d = dmaps;
    return out;
}

StrataDoc load_strata(const Document& doc) {
    if (doc.kind != "strata") schema_fail("strata", "kind mismatch: " + doc.kind);
    const json& p = doc.payload;
    StrataDoc out;
    out.strata.n = as_int(need(p, "n", "strata.n"), "strata.n");
    const json& levels = need(p, "levels", "strata.levels");
    if (!levels.is_array()) schema_fail("strata.levels", "must be an array");
    for (std::size_t t = 0; t < levels.size(); ++t) {
        std::string where = "strata.levels[" + std::to_string(t) + "]";
        StratumLevel lvl;
        lvl.dims = dims1_from_json(need(levels[t], "dims", where), where + ".dims");
        if (levels[t].contains("L")) lvl.L = maps1_from_json(levels[t]["L"], where + ".L");
        if (levels[t].contains("pairing"))
            lvl.pairing = maps1_from_json(levels[t]["pairing"], where + ".pairing");
        out.strata.levels.push_back(std::move(lvl));
    }
    auto load_trans = [&](const char* key) {
        std::vector<std::map<int, Matrix>> res;
        if (!p.contains(key)) return res;
        const json& arr = p[key];
        if (!arr.is_array()) schema_fail(std::string("strata.") + key, "must be an array");
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != 3)
                schema_fail(std::string("strata.") + key, "entries are [level, degree, matrix]");
            std::size_t lvl = as_count(e[0], key);
            if (res.size() <= lvl) res.resize(lvl + 1);
            res[lvl][as_int(e[1], key)] = matrix_from_json(e[2], key);
        }
        return res;
    };
    out.transitions.rho = load_trans("rho");
    out.transitions.gamma = load_trans("gamma");
    if (p.contains("twist"))
        for (const auto& e : p["twist"])
            out.transitions.rho_twist.push_back(as_int(e, "strata.twist"));
    if (p.contains("epsilon"))
        for (const auto& e : p["epsilon"])
            out.transitions.adjoint_sign.push_back(scalar_from_json(e, "strata.epsilon"));
    return out;
}

RZInstance load_rz(const Document& doc) {
    if (doc.kind != "rz_instance") schema_fail("rz_instance", "kind mismatch: " + doc.kind);
    const json& p = doc.payload;
    Document inner{"bigraded", p};
    BigradedDoc big = load_bigraded(inner);
    RZInstance inst;
    inst.module = std::move(big.module);
    inst.differential = std::move(big.differential);
    inst.n = p.contains("n") ? as_int(p["n"], "rz.n") : 0;
    validate_bigraded(inst.module);
    validate_differential(inst.module, inst.differential);
    inst.columns = n_primitive_columns(inst.module);
    extract_gamma_rho(inst.module, inst.differential, inst.columns);
    if (p.contains("pairings")) {
        const json& prs = p["pairings"];
        if (!prs.is_array()) schema_fail("rz.pairings", "must be an array");
        for (const auto& e : prs) {
            if (!e.is_array() || e.size() != 3)
                schema_fail("rz.pairings", "entries are [column, degree, matrix]");
            inst.pairings[as_int(e[0], "rz.pairings")][as_int(e[1], "rz.pairings")] =
                matrix_from_json(e[2], "rz.pairings");
        }
        for (const auto& [col, grams] : inst.pairings) inst.column_pairing(col);
    }
    if (p.contains("provenance")) {
        const json& prov = p["provenance"];
        if (!prov.is_object()) schema_fail("rz.provenance", "must be an object");
        for (auto it = prov.begin(); it != prov.end(); ++it)
            inst.provenance[it.key()] = it.value().is_string()
                                            ? it.value().get<std::string>()
                                            : it.value().dump();
    }
    return inst;
}

FrobeniusDoc load_frobenius(const Document& doc) {
    if (doc.kind != "frobenius") schema_fail("frobenius", "kind mismatch: " + doc.kind);
    const json& p = doc.payload;
    FrobeniusDoc out;
    Document inner{"rz_instance", need(p, "instance", "frobenius.instance")};
    out.instance = load_rz(inner);
    if (p.contains("q")) {
        std::string qs = need(p, "q", "frobenius.q").get<std::string>();
        out.op.q = mpz_class(qs);
    }
    auto blocks = maps2_from_json(need(p, "blocks", "frobenius.blocks"), "frobenius.blocks");
    for (const auto& [s, m] : blocks)
        check_matrix_shape(m, out.instance.module.dim(s.first, s.second),
                           out.instance.module.dim(s.first, s.second), "frobenius.blocks");
    out.op.blocks = std::move(blocks);
    validate_commutation(out.instance.module, out.instance.differential, out.op);
    if (p.contains("claim")) {
        const json& cl = p["claim"];
        FactorizationClaim claim;
        for (const auto& f : need(cl, "factors", "frobenius.claim")) {
            FactorizationClaim::Factor fac;
            std::vector<Rational> coeffs;
            for (const auto& c : need(f, "coeffs", "frobenius.claim.factors"))
                coeffs.push_back(scalar_from_json(c, "frobenius.claim.factors"));
            fac.poly = Poly(std::move(coeffs));
            fac.multiplicity = as_count(need(f, "multiplicity", "frobenius.claim"), "claim");
            if (f.contains("irreducible"))
                fac.irreducible_asserted = f["irreducible"].get<bool>();
            claim.factors.push_back(std::move(fac));
        }
        out.claim = std::move(claim);
    }
    return out;
}

json graded_to_json(const GradedModule& m, const GradedPairing* pairing, int n) {
    json p;
    p["dims"] = dims1_to_json(m.dims());
    std::map<int, Matrix> lmaps;
    for (const auto& [j, d] : m.dims()) {
        Matrix l = m.L(j);
        if (l.rows() && l.cols() && !l.is_zero()) lmaps[j] = l;
    }
    p["L"] = maps1_to_json(lmaps);
    p["n"] = n;
    if (pairing) p["pairing"] = maps1_to_json(pairing->gram);
    return p;
}

json bigraded_to_json(const BigradedModule& m, const Differential& d) {
    json p;
    p["dims"] = dims2_to_json(m.dims());
    std::map<Slot, Matrix> nmaps, lmaps;
    for (const auto& [s, dd] : m.dims()) {
        Matrix n = m.N(s.first, s.second);
        if (n.rows() && n.cols() && !n.is_zero()) nmaps[s] = n;
        Matrix l = m.L(s.first, s.second);
        if (l.rows() && l.cols() && !l.is_zero()) lmaps[s] = l;
    }
    p["N"] = maps2_to_json(nmaps);
    p["L"] = maps2_to_json(lmaps);
    p["d"] = maps2_to_json(d.d);
    return p;
}

json strata_to_json(const StrataCohomology& s, const TransitionMaps& t) {
    json p;
    p["n"] = s.n;
    json levels = json::array();
    for (const auto& lvl : s.levels) {
        json l;
        l["dims"] = dims1_to_json(lvl.dims);
        l["L"] = maps1_to_json(lvl.L);
        l["pairing"] = maps1_to_json(lvl.pairing);
        levels.push_back(std::move(l));
    }
    p["levels"] = std::move(levels);
    auto dump_trans = [](const std::vector<std::map<int, Matrix>>& maps) {
        json a = json::array();
        for (std::size_t lvl = 0; lvl < maps.size(); ++lvl)
            for (const auto& [m, mat] : maps[lvl])
                a.push_back(json::array({lvl, m, matrix_to_json(mat)}));
        return a;
    };
    p["rho"] = dump_trans(t.rho);
    p["gamma"] = dump_trans(t.gamma);
    p["twist"] = t.rho_twist;
    json eps = json::array();
    for (const auto& e : t.adjoint_sign) eps.push_back(to_string(e));
    p["epsilon"] = std::move(eps);
    return p;
}

json rz_to_json(const RZInstance& inst) {
    json p = bigraded_to_json(inst.module, inst.differential);
    p["n"] = inst.n;
    json pairings = json::array();
    for (const auto& [col, grams] : inst.pairings)
        for (const auto& [j, g] : grams)
            pairings.push_back(json::array({col, j, matrix_to_json(g)}));
    p["pairings"] = std::move(pairings);
    json prov;
    for (const auto& [k, v] : inst.provenance) prov[k] = v;
    p["provenance"] = std::move(prov);
    return p;
}

json frobenius_to_json(const RZInstance& inst, const FrobeniusOperator& g,
                       const FactorizationClaim* claim) {
    json p;
    p["instance"] = rz_to_json(inst);
    p["q"] = g.q.get_str();
    p["blocks"] = maps2_to_json(g.blocks);
    if (claim) {
        json factors = json::array();
        for (const auto& f : claim->factors) {
            json fc;
            json coeffs = json::array();
            for (const auto& c : f.poly.coeffs()) coeffs.push_back(to_string(c));
            fc["coeffs"] = std::move(coeffs);
            fc["multiplicity"] = f.multiplicity;
            fc["irreducible"] = f.irreducible_asserted;
            factors.push_back(std::move(fc));
        }
        p["claim"] = json{{"factors", std::move(factors)}};
    }
    return p;
}

json wrap_document(const std::string& kind, json payload) {
    return json{{"format_version", kFormatVersion}, {"kind", kind}, {"payload", std::move(payload)}};
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

std::string fingerprint(const json& doc) { return sha256_hex(doc.dump()); }

}  // namespace wmlab
