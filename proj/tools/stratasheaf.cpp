// Command-line front end: JSON model ingestion, command dispatch, and
// machine- plus human-readable reports.
//
// Exit codes: 0 success, 2 schema/usage error, 3 validation error,
// 4 group closure exceeded the cap, 1 unexpected failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stratasheaf/formulas.hpp"
#include "stratasheaf/models.hpp"
#include "stratasheaf/serialize.hpp"
#include "stratasheaf/sheaf.hpp"
#include "stratasheaf/torusquot.hpp"

namespace ss = stratasheaf;
using ss::Json;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitValidation = 3;
constexpr int kExitGroupCap = 4;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kExitSchema, "cannot open '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t group_cap() {
    if (const char* env = std::getenv("STRATASHEAF_GROUP_CAP")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw CliError{kExitSchema,
                           "bad STRATASHEAF_GROUP_CAP value '" +
                               std::string(env) + "'"};
        }
    }
    return ss::kDefaultGroupCap;
}

struct ModelSource {
    std::string model_path;
    std::string builtin;

    void add_options(CLI::App* cmd) {
        auto* p = cmd->add_option("--model", model_path, "model JSON file");
        auto* b = cmd->add_option("--builtin", builtin,
                                  "builtin model name[:params]");
        p->excludes(b);
    }

    ss::StratifiedModel load(std::string& label) const {
        if (!model_path.empty()) {
            label = model_path;
            try {
                return ss::parse_model(read_file(model_path));
            } catch (const ss::SchemaError& e) {
                throw CliError{kExitSchema, e.what()};
            }
        }
        if (!builtin.empty()) {
            label = "builtin:" + builtin;
            try {
                return ss::build_named_model(builtin);
            } catch (const ss::ModelError& e) {
                throw CliError{kExitSchema, e.what()};
            }
        }
        throw CliError{kExitSchema, "need --model or --builtin"};
    }
};

Json report_shell(const std::string& command, const std::string& source,
                  const std::string& digest) {
    Json report;
    report["format_version"] = ss::kFormatVersion;
    report["command"] = command;
    report["inputs"] = {{"source", source}};
    if (!digest.empty()) report["inputs"]["digest"] = digest;
    report["results"] = Json::object();
    report["warnings"] = Json::array();
    return report;
}

void emit(const Json& report, bool as_json,
          const std::function<void(const Json&)>& human) {
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        human(report);
}

Json torsion_point_json(const ss::TorsionPoint& p) {
    Json out = Json::array();
    for (const auto& q : p.coords) out.push_back(ss::rat_to_string(q));
    return out;
}

Json int_matrix_json(const ss::IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(ss::int_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ss::StratifiedModel load_validated(const ModelSource& src, std::string& label) {
    ss::StratifiedModel m = src.load(label);
    ss::ValidationReport report = ss::validate(m);
    if (!report.ok()) {
        std::ostringstream msg;
        msg << "model fails validation:";
        for (const auto& v : report.violations)
            msg << "\n  [" << ss::to_string(v.code) << "] " << v.location
                << ": " << v.message;
        throw CliError{kExitValidation, msg.str()};
    }
    return m;
}

int cmd_classify(const ModelSource& src, bool as_json, bool list_sections,
                 std::size_t max_list) {
    std::string label;
    ss::StratifiedModel m = load_validated(src, label);
    ss::VerdictReport verdicts =
        ss::classify_model(m, list_sections ? max_list : 0);

    Json report = report_shell("classify", label, ss::model_digest(m));
    Json& res = report["results"];
    res["model"] = m.metadata.name;
    res["section_count"] = ss::int_to_string(verdicts.section_count);
    res["sections_listed"] = verdicts.sections_listed;
    Json sections = Json::array();
    for (const auto& entry : verdicts.entries) {
        Json js;
        Json assign = Json::object();
        for (const auto& [id, e] : entry.section.assignment) {
            assign[id] = {{"element", e},
                          {"label", ss::stalk_label(m.stratum(id).stalk, e)}};
        }
        js["assignment"] = std::move(assign);
        js["verdict"] = ss::to_string(entry.verdict);
        if (entry.witness) {
            Json w = Json::object();
            for (const auto& [id, v] : entry.witness->vectors) {
                Json vec = Json::array();
                for (const auto& q : v) vec.push_back(ss::rat_to_string(q));
                w[id] = std::move(vec);
            }
            js["witness"] = std::move(w);
        }
        sections.push_back(std::move(js));
    }
    res["sections"] = std::move(sections);
    if (list_sections && !verdicts.sections_listed)
        report["warnings"].push_back(
            "section listing skipped: count exceeds --max-list");

    emit(report, as_json, [&](const Json& r) {
        const Json& results = r["results"];
        std::cout << "model: " << results["model"].get<std::string>() << "\n"
                  << "sections: "
                  << results["section_count"].get<std::string>() << "\n";
        for (const auto& s : results["sections"]) {
            std::cout << "  -";
            for (const auto& [id, a] : s["assignment"].items())
                std::cout << " " << id << "="
                          << a["label"].get<std::string>();
            std::cout << "  [" << s["verdict"].get<std::string>() << "]\n";
        }
        for (const auto& w : r["warnings"])
            std::cout << "warning: " << w.get<std::string>() << "\n";
    });
    return 0;
}

int cmd_validate(const ModelSource& src, bool as_json) {
    std::string label;
    ss::StratifiedModel m = src.load(label);
    ss::ValidationReport vr = ss::validate(m);
    Json report = report_shell("validate", label, ss::model_digest(m));
    report["results"] = ss::validation_report_to_json(vr);
    emit(report, as_json, [&](const Json& r) {
        const Json& results = r["results"];
        if (results["ok"].get<bool>()) {
            std::cout << "valid\n";
            return;
        }
        for (const auto& v : results["violations"])
            std::cout << "[" << v["code"].get<std::string>() << "] "
                      << v["location"].get<std::string>() << ": "
                      << v["message"].get<std::string>() << "\n";
    });
    return vr.ok() ? 0 : kExitValidation;
}

ss::MatrixGroup load_group(const std::string& model_path,
                           const std::string& builtin, std::string& label) {
    std::size_t cap = group_cap();
    if (!builtin.empty()) {
        label = "builtin:" + builtin;
        if (builtin == "binary-tetrahedral")
            return ss::binary_tetrahedral_model(cap);
        if (builtin == "pgl3") return ss::pgl3_model(cap);
        if (builtin.size() == 6 && builtin.rfind("gamma", 0) == 0 &&
            std::string("12346").find(builtin[5]) != std::string::npos)
            return ss::close_group(
                2, {ss::gamma_generator(static_cast<unsigned>(builtin[5] - '0'))},
                cap);
        throw CliError{kExitSchema, "unknown builtin group '" + builtin + "'"};
    }
    if (model_path.empty())
        throw CliError{kExitSchema, "need --model or --builtin"};
    label = model_path;
    Json doc = Json::parse(read_file(model_path), nullptr, false);
    if (doc.is_discarded())
        throw CliError{kExitSchema, "input is not valid JSON"};
    try {
        if (!doc.is_object() || !doc.contains("rank") ||
            !doc.contains("generators") || !doc["rank"].is_number_unsigned() ||
            !doc["generators"].is_array())
            throw ss::SchemaError(
                "group document needs rank and generators[]");
        std::size_t rank = doc["rank"].get<std::size_t>();
        std::vector<ss::IntMatrix> gens;
        for (const auto& jg : doc["generators"]) {
            if (!jg.is_array() || jg.size() != rank)
                throw ss::SchemaError("generator has wrong shape");
            ss::IntMatrix g(rank, rank);
            for (std::size_t i = 0; i < rank; ++i) {
                if (!jg[i].is_array() || jg[i].size() != rank)
                    throw ss::SchemaError("generator has wrong shape");
                for (std::size_t j = 0; j < rank; ++j)
                    g.at(i, j) = ss::int_from_string(
                        jg[i][j].get<std::string>());
            }
            gens.push_back(std::move(g));
        }
        return ss::close_group(rank, gens, group_cap());
    } catch (const Json::exception& e) {
        throw CliError{kExitSchema, e.what()};
    } catch (const ss::SchemaError& e) {
        throw CliError{kExitSchema, e.what()};
    }
}

int cmd_torus(const std::string& model_path, const std::string& builtin,
              bool as_json) {
    std::string label;
    ss::MatrixGroup g = load_group(model_path, builtin, label);

    Json report = report_shell("torus", label, "");
    Json& res = report["results"];
    res["rank"] = g.rank;
    res["order"] = g.order();
    bool symp = true;
    try {
        for (const auto& gen : g.generators)
            symp = symp && ss::is_symplectic(gen);
    } catch (const ss::TorusError&) {
        symp = false;
        report["warnings"].push_back("odd rank: symplecticity not defined");
    }
    res["symplectic_generators"] = symp;

    // conjugacy classes with their fixed loci
    std::map<std::vector<ss::Int>, std::size_t> index;
    for (std::size_t i = 0; i < g.elements.size(); ++i)
        index[g.elements[i].entries()] = i;
    std::vector<bool> seen(g.elements.size(), false);
    Json classes = Json::array();
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        if (seen[i]) continue;
        std::size_t class_size = 0;
        for (const auto& h : g.elements) {
            auto hinv = ss::RatMatrix(h).inverse();
            ss::RatMatrix conj =
                ss::RatMatrix(h) * ss::RatMatrix(g.elements[i]) * *hinv;
            ss::IntMatrix ic(g.rank, g.rank);
            for (std::size_t r = 0; r < g.rank; ++r)
                for (std::size_t c = 0; c < g.rank; ++c)
                    ic.at(r, c) = conj.at(r, c).get_num();
            std::size_t idx = index.at(ic.entries());
            if (!seen[idx]) {
                seen[idx] = true;
                ++class_size;
            }
        }
        ss::FixedLocus locus = ss::fixed_locus(g.elements[i]);
        Json jc;
        jc["representative"] = int_matrix_json(g.elements[i]);
        jc["class_size"] = class_size;
        ss::IntMatrix a = g.elements[i];
        for (std::size_t r = 0; r < g.rank; ++r) a.at(r, r) -= 1;
        jc["det_g_minus_I"] = ss::int_to_string(ss::int_determinant(a));
        Json pts = Json::array();
        for (const auto& p : locus.torsion_reps)
            pts.push_back(torsion_point_json(p));
        jc["fixed_torsion_points"] = std::move(pts);
        Json basis = Json::array();
        for (const auto& dir : locus.subtorus_basis) {
            Json v = Json::array();
            for (const auto& e : dir) v.push_back(ss::int_to_string(e));
            basis.push_back(std::move(v));
        }
        jc["subtorus_basis"] = std::move(basis);
        classes.push_back(std::move(jc));
    }
    res["conjugacy_classes"] = std::move(classes);

    ss::SingularOrbitReport orbits = ss::singular_orbits(g);
    Json jorbits = Json::array();
    for (const auto& o : orbits.orbits) {
        Json jo;
        Json pts = Json::array();
        for (const auto& p : o.orbit) pts.push_back(torsion_point_json(p));
        jo["points"] = std::move(pts);
        jo["stabilizer_order"] = o.stabilizer.order();
        jo["verdict"] = ss::to_string(o.verdict);
        jorbits.push_back(std::move(jo));
    }
    res["orbits"] = std::move(jorbits);
    res["partial"] = orbits.partial;
    if (orbits.partial)
        report["warnings"].push_back(
            "some elements fix a subtorus; orbit analysis covers only the "
            "isolated fixed points");

    emit(report, as_json, [&](const Json& r) {
        const Json& results = r["results"];
        std::cout << "order: " << results["order"].get<std::size_t>() << "\n"
                  << "symplectic generators: "
                  << (results["symplectic_generators"].get<bool>() ? "yes"
                                                                   : "no")
                  << "\n";
        for (const auto& o : results["orbits"]) {
            std::cout << "orbit of " << o["points"].size()
                      << " point(s), stabilizer order "
                      << o["stabilizer_order"].get<std::size_t>() << ": "
                      << o["verdict"].get<std::string>() << "\n";
        }
        if (results["partial"].get<bool>())
            std::cout << "(partial: positive-dimensional loci present)\n";
    });
    return 0;
}

int cmd_count(const std::string& family, const std::string& type_label,
              const std::vector<std::string>& type_labels, unsigned m_order,
              unsigned n, bool as_json) {
    Json report = report_shell("count", family, "");
    Json& res = report["results"];
    res["family"] = family;
    res["n"] = n;
    Json factors = Json::array();
    ss::Int total(1);
    try {
        if (family == "bellamy") {
            if (type_label.empty())
                throw CliError{kExitSchema, "bellamy needs --type"};
            ss::DuValType t = ss::du_val(type_label);
            total = ss::bellamy_count(t, n);
            factors.push_back(
                {{"label", t.label}, {"count", ss::int_to_string(total)}});
        } else if (family == "sym-duval") {
            if (type_labels.empty())
                throw CliError{kExitSchema, "sym-duval needs --types"};
            for (const auto& l : type_labels) {
                ss::DuValType t = ss::du_val(l);
                ss::Int c = ss::bellamy_count(t, n);
                factors.push_back(
                    {{"label", t.label}, {"count", ss::int_to_string(c)}});
                total *= c;
            }
        } else if (family == "wreath-torus") {
            if (m_order == 0)
                throw CliError{kExitSchema, "wreath-torus needs --m"};
            res["m"] = m_order;
            for (const auto& t : ss::torus_surface_profile(m_order).points) {
                ss::Int c = ss::bellamy_count(t, n);
                factors.push_back(
                    {{"label", t.label}, {"count", ss::int_to_string(c)}});
                total *= c;
            }
        } else {
            throw CliError{kExitSchema, "unknown family '" + family + "'"};
        }
    } catch (const ss::FormulaError& e) {
        throw CliError{kExitSchema, e.what()};
    }
    res["factors"] = std::move(factors);
    res["count"] = ss::int_to_string(total);

    emit(report, as_json, [&](const Json& r) {
        const Json& results = r["results"];
        std::cout << results["count"].get<std::string>() << "\n";
        for (const auto& f : results["factors"])
            std::cout << "  " << f["label"].get<std::string>() << ": "
                      << f["count"].get<std::string>() << "\n";
    });
    return 0;
}

int cmd_export(const ModelSource& src, const std::string& out_path) {
    std::string label;
    ss::StratifiedModel m = src.load(label);
    std::string text = ss::serialize_model(m);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliError{kExitSchema, "cannot write '" + out_path + "'"};
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stratasheaf: classification of locally projective partial "
                 "crepant resolutions of stratified spaces"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit the machine-readable report");

    ModelSource classify_src;
    bool list_sections = false;
    std::size_t max_list = 10000;
    auto* classify = app.add_subcommand(
        "classify", "count sections and compute projectivity verdicts");
    classify_src.add_options(classify);
    classify->add_flag("--list-sections", list_sections,
                       "list each section with its verdict");
    classify->add_option("--max-list", max_list,
                         "listing cap (default 10000)");

    ModelSource validate_src;
    auto* validate =
        app.add_subcommand("validate", "check model invariants");
    validate_src.add_options(validate);

    std::string torus_model, torus_builtin;
    auto* torus = app.add_subcommand(
        "torus", "analyze a finite integral group acting on the torus");
    torus->add_option("--model", torus_model, "group JSON file");
    torus->add_option("--builtin", torus_builtin,
                      "gamma1|gamma2|gamma3|gamma4|gamma6|binary-tetrahedral|"
                      "pgl3");

    std::string family, type_label, types_csv;
    unsigned count_m = 0, count_n = 1;
    auto* count = app.add_subcommand("count", "closed-form counts");
    count->add_option("family", family, "bellamy|sym-duval|wreath-torus")
        ->required();
    count->add_option("--type", type_label, "du Val label, e.g. E6");
    count->add_option("--types", types_csv, "comma-separated du Val labels");
    count->add_option("--m", count_m, "torus rotation order (wreath-torus)");
    count->add_option("--n", count_n, "symmetric power")->required();

    ModelSource export_src;
    std::string export_out;
    auto* exporter = app.add_subcommand(
        "export", "serialize a model in canonical JSON form");
    export_src.add_options(exporter);
    exporter->add_option("--out", export_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitSchema;
    }

    try {
        if (classify->parsed())
            return cmd_classify(classify_src, as_json, list_sections,
                                max_list);
        if (validate->parsed()) return cmd_validate(validate_src, as_json);
        if (torus->parsed())
            return cmd_torus(torus_model, torus_builtin, as_json);
        if (count->parsed()) {
            std::vector<std::string> labels;
            std::size_t pos = 0;
            while (!types_csv.empty() && pos <= types_csv.size()) {
                std::size_t comma = types_csv.find(',', pos);
                if (comma == std::string::npos) {
                    labels.push_back(types_csv.substr(pos));
                    break;
                }
                labels.push_back(types_csv.substr(pos, comma - pos));
                pos = comma + 1;
            }
            return cmd_count(family, type_label, labels, count_m, count_n,
                             as_json);
        }
        if (exporter->parsed()) return cmd_export(export_src, export_out);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const ss::GroupNotFiniteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGroupCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitSchema;
}
