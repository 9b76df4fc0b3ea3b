#include "stratasheaf/serialize.hpp"

#include <cstdint>

namespace stratasheaf {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

const Json& member(const Json& j, const std::string& where,
                   const std::string& key) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, "missing key '" + key + "'");
    return *it;
}

std::string get_string(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

std::size_t get_index(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned()) bad(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

int get_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

bool get_bool(const Json& j, const std::string& where) {
    if (!j.is_boolean()) bad(where, "expected a boolean");
    return j.get<bool>();
}

Json rat_matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(rat_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix rat_matrix_from_json(const Json& j, const std::string& where,
                               std::size_t cols_hint = 0) {
    if (!j.is_array()) bad(where, "expected an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = cols_hint;
    if (rows > 0) {
        if (!j[0].is_array()) bad(where, "expected an array of rows");
        cols = j[0].size();
    }
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            bad(where, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = rat_from_string(
                get_string(j[i][c], where + "[" + std::to_string(i) + "]"));
    }
    return m;
}

Json vectors_to_json(const std::vector<RatVector>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) {
        Json row = Json::array();
        for (const auto& q : v) row.push_back(rat_to_string(q));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<RatVector> vectors_from_json(const Json& j,
                                         const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of vectors");
    std::vector<RatVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& row = j[i];
        if (!row.is_array()) bad(where, "expected an array of vectors");
        RatVector v;
        for (const auto& q : row)
            v.push_back(rat_from_string(
                get_string(q, where + "[" + std::to_string(i) + "]")));
        out.push_back(std::move(v));
    }
    return out;
}

Json stalk_to_json(const Stalk& stalk) {
    Json out;
    if (const auto* e = std::get_if<ExplicitStalk>(&stalk)) {
        out["kind"] = "explicit";
        out["labels"] = e->labels;
        return out;
    }
    const auto& c = std::get<ChamberStalk>(stalk);
    out["kind"] = "chamber";
    out["dimension"] = c.arrangement.dimension;
    std::vector<RatVector> normals, ambient;
    for (const auto& h : c.arrangement.hyperplanes) {
        RatVector v;
        for (const auto& e : h.normal) v.emplace_back(e);
        normals.push_back(std::move(v));
    }
    for (const auto& h : c.arrangement.ambient.halfspaces) {
        RatVector v;
        for (const auto& e : h) v.emplace_back(e);
        ambient.push_back(std::move(v));
    }
    out["hyperplanes"] = vectors_to_json(normals);
    out["ambient"] = vectors_to_json(ambient);
    return out;
}

Stalk stalk_from_json(const Json& j, const std::string& where) {
    std::string kind = get_string(member(j, where, "kind"), where + ".kind");
    if (kind == "explicit") {
        const Json& labels = member(j, where, "labels");
        if (!labels.is_array()) bad(where + ".labels", "expected an array");
        ExplicitStalk e;
        for (const auto& l : labels)
            e.labels.push_back(get_string(l, where + ".labels"));
        return e;
    }
    if (kind != "chamber") bad(where + ".kind", "must be explicit or chamber");
    std::size_t dim =
        get_index(member(j, where, "dimension"), where + ".dimension");
    auto normals = vectors_from_json(member(j, where, "hyperplanes"),
                                     where + ".hyperplanes");
    auto ambient =
        vectors_from_json(member(j, where, "ambient"), where + ".ambient");
    Arrangement a;
    try {
        a = normalize(dim, normals, ambient);
        return make_chamber_stalk(std::move(a));
    } catch (const ArrangementError& e) {
        bad(where, e.what());
    }
}

Json gen_to_json(const GenMap& gen) {
    Json out;
    if (const auto* t = std::get_if<ExplicitMap>(&gen)) {
        out["kind"] = "table";
        out["table"] = t->table;
        return out;
    }
    out["kind"] = "linear";
    out["matrix"] = rat_matrix_to_json(std::get<LinearMap>(gen).matrix);
    return out;
}

GenMap gen_from_json(const Json& j, const std::string& where) {
    std::string kind = get_string(member(j, where, "kind"), where + ".kind");
    if (kind == "table") {
        const Json& table = member(j, where, "table");
        if (!table.is_array()) bad(where + ".table", "expected an array");
        ExplicitMap t;
        for (const auto& v : table)
            t.table.push_back(get_index(v, where + ".table"));
        return t;
    }
    if (kind != "linear") bad(where + ".kind", "must be table or linear");
    return LinearMap{
        rat_matrix_from_json(member(j, where, "matrix"), where + ".matrix")};
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string int_to_string(const Int& v) { return v.get_str(10); }

std::string rat_to_string(const Rat& v) { return v.get_str(10); }

Int int_from_string(const std::string& s) {
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw SchemaError("bad integer literal '" + s + "'");
    return v;
}

Rat rat_from_string(const std::string& s) {
    Rat v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw SchemaError("bad rational literal '" + s + "'");
    if (v.get_den() == 0)
        throw SchemaError("zero denominator in '" + s + "'");
    v.canonicalize();
    return v;
}

Json model_to_json(const StratifiedModel& m) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["metadata"] = {{"name", m.metadata.name}, {"notes", m.metadata.notes}};
    doc["flags"] = {{"q_factorial_symplectic", m.flags.q_factorial_symplectic},
                    {"h2_units_trivial", m.flags.h2_units_trivial}};
    Json strata = Json::array();
    for (const auto& s : m.strata) {
        Json js;
        js["id"] = s.id;
        js["dim"] = s.dim;
        js["stalk"] = stalk_to_json(s.stalk);
        Json gens = Json::array();
        for (const auto& g : s.monodromy) {
            Json jg = Json::object();
            if (g.matrix) jg["matrix"] = rat_matrix_to_json(*g.matrix);
            if (g.permutation) jg["permutation"] = *g.permutation;
            gens.push_back(std::move(jg));
        }
        js["monodromy"] = std::move(gens);
        if (!s.basepoint_note.empty()) js["basepoint_note"] = s.basepoint_note;
        strata.push_back(std::move(js));
    }
    doc["strata"] = std::move(strata);
    Json arrows = Json::array();
    for (const auto& a : m.arrows) {
        Json ja;
        ja["source"] = a.source;
        ja["target"] = a.target;
        ja["tag"] = a.tag;
        ja["gen"] = gen_to_json(a.gen);
        arrows.push_back(std::move(ja));
    }
    doc["arrows"] = std::move(arrows);
    return doc;
}

StratifiedModel model_from_json(const Json& doc) {
    if (!doc.is_object()) bad("$", "model document must be an object");
    std::string version = get_string(member(doc, "$", "format_version"),
                                     "$.format_version");
    if (version != kFormatVersion)
        bad("$.format_version", "unsupported version '" + version + "'");

    StratifiedModel m;
    const Json& meta = member(doc, "$", "metadata");
    m.metadata.name = get_string(member(meta, "$.metadata", "name"),
                                 "$.metadata.name");
    m.metadata.notes = get_string(member(meta, "$.metadata", "notes"),
                                  "$.metadata.notes");
    const Json& flags = member(doc, "$", "flags");
    m.flags.q_factorial_symplectic =
        get_bool(member(flags, "$.flags", "q_factorial_symplectic"),
                 "$.flags.q_factorial_symplectic");
    m.flags.h2_units_trivial =
        get_bool(member(flags, "$.flags", "h2_units_trivial"),
                 "$.flags.h2_units_trivial");

    const Json& strata = member(doc, "$", "strata");
    if (!strata.is_array()) bad("$.strata", "expected an array");
    for (std::size_t i = 0; i < strata.size(); ++i) {
        std::string where = "$.strata[" + std::to_string(i) + "]";
        const Json& js = strata[i];
        StratumData s;
        s.id = get_string(member(js, where, "id"), where + ".id");
        s.dim = get_int(member(js, where, "dim"), where + ".dim");
        if (s.dim < 0) bad(where + ".dim", "must be nonnegative");
        s.stalk = stalk_from_json(member(js, where, "stalk"), where + ".stalk");
        const Json& gens = member(js, where, "monodromy");
        if (!gens.is_array()) bad(where + ".monodromy", "expected an array");
        for (std::size_t g = 0; g < gens.size(); ++g) {
            std::string gw = where + ".monodromy[" + std::to_string(g) + "]";
            if (!gens[g].is_object()) bad(gw, "expected an object");
            MonodromyGenerator gen;
            if (auto it = gens[g].find("matrix"); it != gens[g].end())
                gen.matrix = rat_matrix_from_json(*it, gw + ".matrix");
            if (auto it = gens[g].find("permutation"); it != gens[g].end()) {
                if (!it->is_array()) bad(gw + ".permutation", "expected array");
                Permutation p;
                for (const auto& v : *it)
                    p.push_back(get_index(v, gw + ".permutation"));
                gen.permutation = std::move(p);
            }
            if (!gen.matrix && !gen.permutation)
                bad(gw, "needs a matrix or a permutation");
            s.monodromy.push_back(std::move(gen));
        }
        if (auto it = js.find("basepoint_note"); it != js.end())
            s.basepoint_note = get_string(*it, where + ".basepoint_note");
        m.strata.push_back(std::move(s));
    }

    const Json& arrows = member(doc, "$", "arrows");
    if (!arrows.is_array()) bad("$.arrows", "expected an array");
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        std::string where = "$.arrows[" + std::to_string(i) + "]";
        const Json& ja = arrows[i];
        HasseArrow a;
        a.source = get_string(member(ja, where, "source"), where + ".source");
        a.target = get_string(member(ja, where, "target"), where + ".target");
        a.tag = get_string(member(ja, where, "tag"), where + ".tag");
        a.gen = gen_from_json(member(ja, where, "gen"), where + ".gen");
        m.arrows.push_back(std::move(a));
    }
    return m;
}

std::string serialize_model(const StratifiedModel& m) {
    return model_to_json(m).dump(2) + "\n";
}

StratifiedModel parse_model(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw SchemaError("input is not valid JSON");
    return model_from_json(doc);
}

std::string model_digest(const StratifiedModel& m) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64(serialize_model(m))));
    return buf;
}

Json validation_report_to_json(const ValidationReport& r) {
    Json out;
    out["ok"] = r.ok();
    Json vs = Json::array();
    for (const auto& v : r.violations)
        vs.push_back({{"code", to_string(v.code)},
                      {"location", v.location},
                      {"message", v.message}});
    out["violations"] = std::move(vs);
    return out;
}

}  // namespace stratasheaf
