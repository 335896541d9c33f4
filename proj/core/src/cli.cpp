#include "wmlab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "wmlab/instance_io.hpp"
#include "wmlab/report.hpp"

namespace wmlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct CheckOptions {
    std::string which;
    std::string path;
    std::string format = "text";
    std::string out;
    bool assume_low_j_injectivity = false;
    std::uint64_t seed = 0;
};

RZInstance instance_for_check(const Document& doc, bool need_pairings) {
    if (doc.kind == "rz_instance") {
        RZInstance inst = load_rz(doc);
        if (need_pairings && !inst.has_pairings())
            throw Error(ErrorKind::SchemaError, "check requires an instance with pairings");
        return inst;
    }
    if (doc.kind == "bigraded" && !need_pairings) {
        BigradedDoc big = load_bigraded(doc);
        RZInstance inst;
        inst.module = std::move(big.module);
        inst.differential = std::move(big.differential);
        validate_bigraded(inst.module);
        validate_differential(inst.module, inst.differential);
        inst.columns = n_primitive_columns(inst.module);
        extract_gamma_rho(inst.module, inst.differential, inst.columns);
        return inst;
    }
    throw Error(ErrorKind::SchemaError,
                "instance kind '" + doc.kind + "' does not match this check");
}

void emit_report(const VerdictReport& rep, const CheckOptions& opt) {
    if (opt.format == "machine")
        std::cout << dump_document(rep.to_machine());
    else
        std::cout << rep.to_text() << "\n";
    if (!opt.out.empty()) {
        std::ofstream f(opt.out, std::ios::binary);
        f << dump_document(rep.to_machine());
    }
}

int run_check(const CheckOptions& opt) {
    auto started = Clock::now();
    Document doc;
    VerdictReport rep;
    rep.check = opt.which;
    try {
        doc = parse_document_file(opt.path);
        rep.fingerprint = fingerprint(wrap_document(doc.kind, doc.payload));

        if (opt.which == "wm") {
            RZInstance inst = instance_for_check(doc, false);
            WmReport wm = wm_verdict(inst.module, inst.differential);
            rep.verdict = wm.verdict ? Verdict::Pass : Verdict::Fail;
            if (!wm.witness.empty()) rep.witnesses.push_back(wm.witness);
            if (!wm.witness_vector.empty()) {
                std::string vec = "[";
                for (std::size_t k = 0; k < wm.witness_vector.size(); ++k)
                    vec += (k ? ", " : "") + to_string(wm.witness_vector[k]);
                rep.witnesses.push_back(vec + "]");
            }
            if (!wm.l_bijectivity_holds)
                rep.witnesses.push_back("(2.1.4) L-bijectivity fails on this instance");
        } else if (opt.which == "thm02") {
            RZInstance inst = instance_for_check(doc, true);
            Thm02Result res = thm02_hypotheses(inst);
            rep.verdict = (res.hyp_rho && res.hyp_gamma) ? Verdict::Pass : Verdict::Fail;
            if (!res.first_failure.empty()) rep.witnesses.push_back(res.first_failure);
            rep.witnesses.push_back(std::string("hyp_rho=") + (res.hyp_rho ? "true" : "false") +
                                    " hyp_gamma=" + (res.hyp_gamma ? "true" : "false"));
        } else if (opt.which == "rz") {
            RZInstance inst = instance_for_check(doc, true);
            RzResult res = rz_hypothesis(inst);
            rep.verdict = res.holds ? Verdict::Pass : Verdict::Fail;
            if (!res.first_failure.empty()) rep.witnesses.push_back(res.first_failure);
        } else if (opt.which == "thm03") {
            RZInstance inst = instance_for_check(doc, true);
            Thm03Result res = thm03_procedure(inst, opt.assume_low_j_injectivity);
            rep.verdict = res.verdict ? Verdict::Pass : Verdict::Fail;
            for (const auto& st : res.trace) {
                std::ostringstream os;
                os << "i=" << st.i << " bijective, Im gamma rho 1-symmetric, (2.5.1) kernel zero";
                rep.witnesses.push_back(os.str());
            }
        } else if (opt.which == "criterion22") {
            RZInstance inst = instance_for_check(doc, false);
            Cohomology h = cohomology(inst.module, inst.differential);
            std::size_t applicable = 0, disagreements = 0;
            for (int i = 1; i <= inst.columns.max_column + 1; ++i)
                for (int j = inst.module.min_j() - 1; j <= inst.module.max_j() + 1; ++j)
                    for (CriterionVariant v : {CriterionVariant::I, CriterionVariant::II,
                                               CriterionVariant::III, CriterionVariant::IV}) {
                        CriterionResult res =
                            criterion_2_2(inst.module, inst.differential, inst.columns, h, i, j, v);
                        if (!res.applicable) continue;
                        ++applicable;
                        if (res.criterion_true != res.direct_truth) ++disagreements;
                    }
            rep.verdict = disagreements == 0 ? Verdict::Pass : Verdict::Fail;
            std::ostringstream os;
            os << applicable << " applicable criteria, " << disagreements << " disagreements";
            rep.witnesses.push_back(os.str());
        } else if (opt.which == "frobenius") {
            FrobeniusDoc fd = load_frobenius(doc);
            if (fd.claim) {
                Poly p = char_poly(total_matrix(fd.instance.module, fd.op));
                validate_factorization(p, *fd.claim);
                Idempotents idem = build_idempotents(fd.instance.module, fd.op, *fd.claim);
                FactorizationClaim sorted = sort_claim(*fd.claim);
                for (std::size_t k = 0; k < sorted.factors.size(); ++k)
                    min_poly_on_image(fd.instance.module, fd.op, idem.projectors[k],
                                      sorted.factors[k].poly, sorted.factors[k].multiplicity);
                rep.witnesses.push_back("idempotent identities verified for " +
                                        std::to_string(sorted.factors.size()) + " factors");
            }
            MultiplicityReport mr = multiplicity_one_report(fd.instance, fd.op);
            rep.witnesses.push_back(std::string("multiplicity-one hypothesis: ") +
                                    (mr.hypothesis ? "holds" : "fails"));
            for (const auto& row : mr.rows) {
                std::ostringstream os;
                os << "column " << row.column << " degree " << row.degree << " factor "
                   << row.factor.str() << " mult " << row.multiplicity_in_primitive
                   << (row.meets_im_rho ? " [Im rho]" : "")
                   << (row.meets_im_gamma ? " [Im gamma]" : "")
                   << (row.degree_at_most_2 ? " deg<=2" : " deg>2");
                rep.witnesses.push_back(os.str());
            }
            rep.verdict = Verdict::Pass;
        } else {
            throw Error(ErrorKind::SchemaError, "unknown check '" + opt.which + "'");
        }
    } catch (const Error& e) {
        rep.timing_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - started).count();
        if (e.kind() == ErrorKind::HypothesisFailed) {
            rep.verdict = Verdict::Fail;
            rep.witnesses.push_back(e.what());
            emit_report(rep, opt);
            return 1;
        }
        rep.verdict = Verdict::Inapplicable;
        rep.witnesses.push_back(e.what());
        emit_report(rep, opt);
        return 2;
    }
    rep.timing_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    emit_report(rep, opt);
    return rep.verdict == Verdict::Pass ? 0 : 1;
}

int run_validate(const std::string& path) {
    try {
        Document doc = parse_document_file(path);
        if (doc.kind == "graded") {
            load_graded(doc);
        } else if (doc.kind == "bigraded") {
            BigradedDoc big = load_bigraded(doc);
            validate_bigraded(big.module);
            validate_differential(big.module, big.differential);
        } else if (doc.kind == "strata") {
            StrataDoc sd = load_strata(doc);
            ValidationReport rep = validate_strata(sd.strata, sd.transitions);
            for (const auto& item : rep.items)
                std::cout << (item.pass ? "[pass] " : "[FAIL] ") << item.check << " at "
                          << item.location << "\n";
            if (!rep.all_pass) {
                const ValidationItem* f = rep.first_failure();
                std::cout << "invalid: " << f->check << " at " << f->location << "\n";
                return 2;
            }
        } else if (doc.kind == "rz_instance") {
            load_rz(doc);
        } else if (doc.kind == "frobenius") {
            load_frobenius(doc);
        } else {
            throw Error(ErrorKind::SchemaError, "unknown kind '" + doc.kind + "'");
        }
        std::cout << "valid " << doc.kind << " document\n";
        return 0;
    } catch (const Error& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return 2;
    }
}

struct GenerateOptions {
    std::string kind;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t r = 3;
    std::string genera;
    std::string preset = "triangle";
    std::string facets;
    int n = 1;
    std::size_t atoms = 3;
    int max_p = 2, max_q = 2;
    bool no_pairs = false;
    std::string base;
};

std::vector<std::size_t> parse_counts(const std::string& s) {
    std::vector<std::size_t> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(std::stoul(item));
    return out;
}

SimplicialComplex parse_facets(const std::string& s) {
    SimplicialComplex cx;
    std::istringstream is(s);
    std::string facet;
    while (std::getline(is, facet, ';')) {
        if (facet.empty()) continue;
        std::vector<int> verts;
        std::istringstream fs(facet);
        std::string v;
        while (std::getline(fs, v, ','))
            if (!v.empty()) verts.push_back(std::stoi(v));
        cx.facets.push_back(std::move(verts));
    }
    return cx;
}

int run_generate(const GenerateOptions& opt) {
    try {
        RZInstance inst;
        if (opt.kind == "curve") {
            auto [strata, trans] = gen_curve_cycle(opt.r, parse_counts(opt.genera));
            inst = assemble(strata, trans);
            inst.provenance["generator"] = "curve_cycle";
            inst.provenance["r"] = std::to_string(opt.r);
            inst.provenance["genera"] = opt.genera.empty() ? "0" : opt.genera;
            std::size_t g_total = 0;
            for (std::size_t g : parse_counts(opt.genera)) g_total += g;
            inst.provenance["planted_wm"] = "true";
            inst.provenance["planted_gr0_h1"] = "1";
            inst.provenance["planted_gr2_h1"] = "1";
            inst.provenance["planted_gr1_h1"] = std::to_string(2 * g_total);
        } else if (opt.kind == "combinatorial") {
            SimplicialComplex cx;
            if (!opt.facets.empty()) {
                cx = parse_facets(opt.facets);
            } else if (opt.preset == "triangle") {
                cx.facets = {{0, 1}, {1, 2}, {0, 2}};
            } else if (opt.preset == "tetrahedron") {
                cx.facets = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
            } else if (opt.preset == "vertex") {
                cx.facets = {{0}};
            } else {
                throw Error(ErrorKind::SchemaError, "unknown preset '" + opt.preset + "'");
            }
            auto [strata, trans] = gen_combinatorial(cx, opt.n);
            inst = assemble(strata, trans);
            inst.provenance["generator"] = "combinatorial";
            inst.provenance["n"] = std::to_string(opt.n);
        } else if (opt.kind == "random") {
            JordanParams params;
            params.atoms = opt.atoms;
            params.max_p = opt.max_p;
            params.max_q = opt.max_q;
            params.allow_pairs = !opt.no_pairs;
            inst = gen_random_jordan(opt.seed, params);
        } else if (opt.kind == "negative") {
            if (opt.base.empty())
                throw Error(ErrorKind::SchemaError, "negative generator needs --base <instance>");
            Document doc = parse_document_file(opt.base);
            RZInstance base = load_rz(doc);
            inst = perturb_break_pairing(base, opt.seed);
        } else {
            throw Error(ErrorKind::SchemaError, "unknown generator '" + opt.kind + "'");
        }
        inst.provenance["seed"] = std::to_string(opt.seed);
        std::string text = dump_document(wrap_document("rz_instance", rz_to_json(inst)));
        if (opt.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(opt.out, std::ios::binary);
            if (!f) throw Error(ErrorKind::SchemaError, "cannot write '" + opt.out + "'");
            f << text;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "generate failed: " << e.what() << "\n";
        return 2;
    }
}

int run_report(const std::vector<std::string>& paths, const std::string& format,
               const std::string& out) {
    Summary summary;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            summary.skipped.push_back(path + " (unreadable)");
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::parse_error&) {
            summary.skipped.push_back(path + " (parse error)");
            continue;
        }
        auto take = [&](const nlohmann::json& r) {
            VerdictReport rep;
            rep.check = r.value("check", "");
            rep.fingerprint = r.value("fingerprint", "");
            std::string v = r.value("verdict", "inapplicable");
            rep.verdict = v == "pass" ? Verdict::Pass
                                      : (v == "fail" ? Verdict::Fail : Verdict::Inapplicable);
            if (r.contains("witnesses"))
                for (const auto& w : r["witnesses"]) rep.witnesses.push_back(w.get<std::string>());
            if (seen.insert({rep.fingerprint, rep.check}).second)
                summary.reports.push_back(std::move(rep));
        };
        if (j.is_object() && j.contains("reports"))
            for (const auto& r : j["reports"]) take(r);
        else if (j.is_object() && j.contains("check"))
            take(j);
        else
            summary.skipped.push_back(path + " (not a report)");
    }
    if (format == "machine")
        std::cout << dump_document(summary.to_machine());
    else
        std::cout << summary.to_text();
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        f << dump_document(summary.to_machine());
    }
    return summary.failed() > 0 ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"exact weight-monodromy laboratory"};
    app.require_subcommand(1);

    CheckOptions chk;
    GenerateOptions gen;
    std::string validate_path;
    std::vector<std::string> report_paths;
    std::string report_format = "text", report_out;

    CLI::App* validate = app.add_subcommand("validate", "validate an instance document");
    validate->add_option("path", validate_path, "instance file")->required();

    CLI::App* check = app.add_subcommand("check", "run a checker on an instance");
    check->add_option("which", chk.which, "wm|thm02|thm03|rz|criterion22|frobenius")->required();
    check->add_option("path", chk.path, "instance file")->required();
    check->add_option("--format", chk.format, "text|machine");
    check->add_option("--out", chk.out, "write the machine report here");
    check->add_flag("--assume-low-j-injectivity", chk.assume_low_j_injectivity,
                    "grant the hyperplane-section hypothesis of the inductive procedure");
    check->add_option("--seed", chk.seed, "seed recorded in the report context");

    CLI::App* generate = app.add_subcommand("generate", "emit an instance document");
    generate->add_option("kind", gen.kind, "curve|combinatorial|random|negative")->required();
    generate->add_option("--out", gen.out, "output path (stdout when omitted)");
    generate->add_option("--seed", gen.seed, "deterministic seed");
    generate->add_option("--r", gen.r, "curve cycle length");
    generate->add_option("--genera", gen.genera, "comma list of genera");
    generate->add_option("--preset", gen.preset, "triangle|tetrahedron|vertex");
    generate->add_option("--facets", gen.facets, "semicolon list of comma vertex lists");
    generate->add_option("--n", gen.n, "ambient relative dimension");
    generate->add_option("--atoms", gen.atoms, "random generator piece count");
    generate->add_option("--max-p", gen.max_p, "random generator N-string bound");
    generate->add_option("--max-q", gen.max_q, "random generator L-string bound");
    generate->add_flag("--no-pairs", gen.no_pairs, "balanced bi-strings only");
    generate->add_option("--base", gen.base, "base instance for the negative generator");

    CLI::App* report = app.add_subcommand("report", "merge machine reports");
    report->add_option("paths", report_paths, "report files");
    report->add_option("--format", report_format, "text|machine");
    report->add_option("--out", report_out, "write the merged machine report here");

    std::vector<const char*> argv;
    argv.push_back("wmlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (validate->parsed()) return run_validate(validate_path);
    if (check->parsed()) return run_check(chk);
    if (generate->parsed()) return run_generate(gen);
    if (report->parsed()) return run_report(report_paths, report_format, report_out);
    return 2;
}

}  // namespace wmlab::cli
