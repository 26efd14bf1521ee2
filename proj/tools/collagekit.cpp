#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "collagekit/bridge.hpp"
#include "collagekit/collage.hpp"
#include "collagekit/io.hpp"
#include "collagekit/matr.hpp"
#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"
#include "collagekit/suite.hpp"

using namespace ck;

namespace {

enum Exit { OK = 0, CHECK_FAILED = 1, STRUCTURAL = 2, UNSURE = 3 };

struct Global {
    std::string format = "text";
    bool strict = false;
    int cap = 4;
};

int exit_for(Verdict v, const Global& g) {
    if (v == Verdict::NO) return CHECK_FAILED;
    if (v == Verdict::UNKNOWN && g.strict) return UNSURE;
    return OK;
}

void add_check(Report& rep, const std::string& name, const Check& c) {
    rep.add(name, c.ok(), c.ok() ? std::string() : c.describe());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write " + path);
    out << text;
}

int emit_report(const Global& g, const std::string& what, const Report& rep, Json extra = Json::object()) {
    if (g.format == "json") {
        Json j = report_json(rep);
        j["command"] = what;
        j["tool"] = "collagekit";
        j["version"] = kToolVersion;
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        std::cout << canonical_dump(j);
    } else {
        std::cout << what << "\n" << rep.describe();
        if (rep.describe().empty() || rep.describe().back() != '\n') std::cout << "\n";
        std::cout << "verdict: " << to_string(rep.verdict()) << "\n";
    }
    return exit_for(rep.verdict(), g);
}

ECatPtr load_mod_category(const Json& doc) {
    if (schema_of(doc) != "mod-enriched-category")
        throw StructuralError("expected a mod-enriched-category document, got " + schema_of(doc));
    return decode_mod_category(doc);
}

Json expect(const Json& doc, const std::string& schema) {
    if (schema_of(doc) != schema) throw StructuralError("expected a " + schema + " document, got " + schema_of(doc));
    return doc;
}

// Validation of one decoded document; structural problems throw.
Report validate_document(const Json& doc) {
    Report rep;
    const std::string& s = schema_of(doc);
    if (s == "base") {
        auto B = decode_base(doc);
        rep.add("base", true, B->name());
    } else if (s == "ecategory") {
        add_check(rep, "enriched category", validate(*decode_ecategory(doc)));
    } else if (s == "mod-enriched-category") {
        add_check(rep, "mod-enriched category", validate(*decode_mod_category(doc)));
    } else if (s == "emodule") {
        auto T = decode_emodule(doc);
        add_check(rep, "source", validate(*T.src));
        add_check(rep, "target", validate(*T.dst));
        add_check(rep, "module", validate(T));
    } else if (s == "efunctor") {
        auto D = decode_efunctor(doc);
        add_check(rep, "source", validate(*D.src));
        add_check(rep, "target", validate(*D.dst));
        add_check(rep, "functor", validate(D));
    } else if (s == "job") {
        const auto& cmd = doc.at("command").get_ref<const std::string&>();
        if (cmd != "compose" && cmd != "collage" && cmd != "check") throw StructuralError("job: unknown command " + cmd);
        if (!doc.contains("inputs") || !doc.at("inputs").is_array()) throw StructuralError("job: inputs must be an array");
        int i = 0;
        for (const auto& in : doc.at("inputs")) rep.append(validate_document(parse_document(in.dump())), "input " + std::to_string(++i) + ": ");
    }
    return rep;
}

std::vector<Json> load_all(const std::vector<std::string>& paths) {
    std::vector<Json> docs;
    for (const auto& p : paths) docs.push_back(read_document(p));
    return docs;
}

BaseMorphism morphism_for(const std::string& spec, const ECatPtr& input) {
    BasePtr C = mod_base_of(*input).inner();
    if (spec == "identity") return identity_morphism(C);
    if (spec == "span-to-rel") return span_to_rel(C);
    if (spec.rfind("truncate:", 0) == 0) return minplus_truncation(C, std::stoi(spec.substr(9)));
    throw StructuralError("unknown base morphism " + spec + " (identity, span-to-rel, truncate:K)");
}

Report run_check(const std::string& kind, const std::vector<Json>& docs, int cap, const std::string& morphism) {
    auto need = [&](std::size_t n) {
        if (docs.size() != n)
            throw StructuralError("check " + kind + " takes " + std::to_string(n) + " input(s), got " +
                                  std::to_string(docs.size()));
    };
    Report rep;
    if (kind == "representable") {
        need(1);
        auto D = decode_efunctor(expect(docs[0], "efunctor"));
        add_check(rep, "functor", validate(D));
        if (!rep.ok()) return rep;
        add_check(rep, "representable module", validate(representable(D)));
        rep.add("adjunction", adjunction_check(representable_adjunction(D)));
    } else if (kind == "adjoint") {
        need(1);
        auto L = decode_emodule(expect(docs[0], "emodule"));
        add_check(rep, "module", validate(L));
        if (!rep.ok()) return rep;
        auto s = find_right_adjoint(L, cap);
        const std::string c = std::to_string(cap);
        rep.add("right adjoint", s.verdict,
                s.verdict == Verdict::YES ? "triangle identities hold"
                : s.verdict == Verdict::NO ? "exhaustive search below the carrier bound found none"
                                           : "none found with carriers up to " + c);
    } else if (kind == "equivalence") {
        need(2);
        auto ms = decode_module_chain({expect(docs[0], "emodule"), expect(docs[1], "emodule")});
        const EModule &T = ms[0], &S = ms[1];
        if (S.dst != T.src) throw StructuralError("the second module must end where the first starts");
        add_check(rep, "first module", validate(T));
        add_check(rep, "second module", validate(S));
        if (!rep.ok()) return rep;
        for (auto [name, composite, id] :
             {std::tuple{"second after first", mod_compose(S, T).composite, mod_id(T.src)},
              std::tuple{"first after second", mod_compose(T, S).composite, mod_id(T.dst)}}) {
            auto iso = module_iso(composite, id, cap);
            rep.add(name, iso.iso ? Verdict::YES : iso.exhausted ? Verdict::NO : Verdict::UNKNOWN,
                    iso.iso ? "" : "no isomorphism with the identity module");
        }
    } else if (kind == "collage" || kind == "tight-collage" || kind == "idempotence" || kind == "absolute") {
        need(1);
        auto input = load_mod_category(docs[0]);
        add_check(rep, "input", validate(*input));
        if (!rep.ok()) return rep;
        if (kind == "idempotence") {
            rep.append(idempotence_probe(input), "");
        } else {
            auto r = collage(input);
            if (kind == "collage") rep.append(certify_collage(r), "");
            else if (kind == "tight-collage") rep.append(detects_tightness(r, cap).report, "");
            else rep.append(absoluteness_probe(r, morphism_for(morphism, input)), "");
        }
    } else if (kind == "decompose") {
        need(1);
        auto A = decode_ecategory(expect(docs[0], "ecategory"));
        add_check(rep, "category", validate(*A));
        if (!rep.ok()) return rep;
        auto d = decompose_check(A, sample_module_pairs(A, static_cast<std::size_t>(cap)));
        rep.add("round trip", d.round_trip, d.detail);
        rep.add("composition", d.ok && d.agreed == d.pairs,
                std::to_string(d.agreed) + "/" + std::to_string(d.pairs) + " pairs agree");
    } else {
        throw StructuralError("unknown check kind " + kind);
    }
    return rep;
}

std::string carriers(const EModule& T) {
    const Base& B = *T.src->base;
    std::string s = "[";
    for (std::size_t c = 0; c < T.comps.size(); ++c) s += (c ? "," : "") + std::to_string(B.carrier(T.comps[c]));
    return s + "]";
}

int do_compose(const Global& g, const std::vector<Json>& docs, const std::string& out) {
    if (docs.empty()) throw StructuralError("compose needs at least one module");
    std::vector<Json> mods;
    for (const auto& d : docs) mods.push_back(expect(d, "emodule"));
    auto ms = decode_module_chain(mods);
    Report rep;
    for (std::size_t i = 0; i < ms.size(); ++i) add_check(rep, "module " + std::to_string(i + 1), validate(ms[i]));
    if (!rep.ok()) return emit_report(g, "compose", rep);
    EModule acc = ms[0];
    std::ostringstream witness;
    witness << "module 1 carriers " << carriers(acc) << "\n";
    for (std::size_t i = 1; i < ms.size(); ++i) {
        auto w = mod_compose(ms[i], acc);
        acc = w.composite;
        witness << "after module " << i + 1 << " carriers " << carriers(acc) << "\n";
    }
    add_check(rep, "composite", validate(acc));
    const std::string doc = canonical_dump(make_document("emodule", encode_emodule(acc)));
    if (!out.empty()) {
        write_file(out, doc);
        std::cout << witness.str() << "wrote " << out << "\n";
    } else {
        std::cout << doc;
        std::cerr << witness.str();
    }
    return exit_for(rep.verdict(), g);
}

int do_collage(const Global& g, const Json& doc, const std::string& prefix) {
    auto input = load_mod_category(doc);
    Report rep;
    add_check(rep, "input", validate(*input));
    if (!rep.ok()) return emit_report(g, "collage", rep);
    auto r = collage(input);
    rep.append(certify_collage(r), "");
    Json total = make_document("ecategory", encode_ecategory(*r.total));
    Json coproj = Json::object();
    for (std::size_t x = 0; x < r.coprojections.size(); ++x)
        coproj[input->names[x]] = make_document("efunctor", encode_efunctor(r.coprojections[x].functor));
    if (!prefix.empty()) {
        write_file(prefix + ".total.json", canonical_dump(total));
        for (auto it = coproj.begin(); it != coproj.end(); ++it)
            write_file(prefix + ".coprojection." + it.key() + ".json", canonical_dump(it.value()));
        Json cert = report_json(rep);
        cert["tool"] = "collagekit";
        cert["version"] = kToolVersion;
        write_file(prefix + ".certificate.json", canonical_dump(cert));
        return emit_report(g, "collage", rep, {{"written", prefix + ".*.json"}});
    }
    if (g.format == "json") return emit_report(g, "collage", rep, {{"total", total}, {"coprojections", coproj}});
    std::cout << "total category: " << r.total->size() << " objects\n";
    return emit_report(g, "collage", rep);
}

int do_demo(const Global& g, const std::string& which, int metric_cap) {
    Report rep;
    Json extra = Json::object();
    if (which == "metric") {
        // two spaces joined by bridges of length 5 and 9
        std::vector<std::vector<int>> spaces = {{0, 3, 3, 0}, {0, 2, 2, 0}};
        std::vector<MetricGlue> glue = {{0, 1, {5, -1, 9, -1}}};
        auto d = metric_collage_demo(metric_cap, spaces, glue);
        rep.add("distance table equals shortest paths", d.agrees);
        rep.append(certify_collage(d.collage), "collage: ");
        extra["points"] = d.points;
        extra["table"] = d.table;
        extra["oracle"] = d.oracle;
        if (g.format != "json") {
            std::cout << "distances (" << metric_cap + 1 << " = infinite)\n";
            for (int i = 0; i < d.points; ++i) {
                for (int k = 0; k < d.points; ++k) std::cout << (k ? " " : "") << d.table[i * d.points + k];
                std::cout << "\n";
            }
        }
    } else if (which == "fincat") {
        auto S = std::make_shared<SpanBase>(ArityClass::SINGLETON);
        auto arrow = std::make_shared<FinCategory>(FinCategory::walking_arrow());
        auto iso = std::make_shared<FinCategory>(FinCategory::walking_iso());
        auto z2 = std::make_shared<FinCategory>(FinCategory::monoid(2, {0, 1, 1, 0}, "z2"));
        for (auto [K, L] : {std::pair{arrow, iso}, std::pair{iso, arrow}, std::pair{z2, z2}, std::pair{arrow, z2}}) {
            auto c = cat1_equiv_check(K, L, S);
            rep.add("internal functors " + K->name + " -> " + L->name, c.ok,
                    std::to_string(c.functors) + " functors, " + std::to_string(c.transformations) + " transformations");
        }
        auto F = std::make_shared<SpanBase>(ArityClass::FINITE);
        auto M = std::make_shared<ModBase>(F, ArityClass::FINITE);
        auto input = blocked(fincat_partitioned(FinCategory::walking_arrow(), {0, 1}, F), {0, 1}, false, M);
        rep.append(certify_collage(collage(input)), "collage of the arrow: ");
    } else {
        throw StructuralError("unknown demo " + which + " (metric, fincat)");
    }
    return emit_report(g, "demo " + which, rep, extra);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collagekit: enriched categories, modules and collages over finite bases"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--strict", g.strict, "exit 3 when a result is UNKNOWN");
    app.add_option("--cap", g.cap, "enumeration cap")->check(CLI::PositiveNumber);

    std::vector<std::string> paths;
    std::string out, kind, morphism = "identity", scale = "smoke", which, report_path;
    std::uint64_t seed = 7;
    int metric_cap = 10;

    auto* validate_cmd = app.add_subcommand("validate", "check documents against their schema and laws");
    validate_cmd->add_option("paths", paths, "documents")->required();
    auto* compose_cmd = app.add_subcommand("compose", "compose modules, first applied first");
    compose_cmd->add_option("paths", paths, "module documents")->required();
    compose_cmd->add_option("-o,--out", out, "write the composite here");
    auto* collage_cmd = app.add_subcommand("collage", "collage of a mod-enriched category, with certificates");
    collage_cmd->add_option("path", paths, "mod-enriched-category document")->required()->expected(1);
    collage_cmd->add_option("-o,--out", out, "prefix for written documents");
    auto* check_cmd = app.add_subcommand("check", "run one certification");
    check_cmd->add_option("kind", kind, "check kind")
        ->required()
        ->check(CLI::IsMember({"representable", "adjoint", "equivalence", "collage", "tight-collage", "decompose",
                               "idempotence", "absolute"}));
    check_cmd->add_option("paths", paths, "input documents")->required();
    check_cmd->add_option("--morphism", morphism, "base morphism for absolute: identity, span-to-rel, truncate:K");
    auto* suite_cmd = app.add_subcommand("suite", "property suite and acceptance criteria");
    suite_cmd->add_option("--seed", seed, "corpus seed");
    suite_cmd->add_option("--scale", scale, "smoke or full")->check(CLI::IsMember({"smoke", "full"}));
    suite_cmd->add_option("--metric-cap", metric_cap, "quantale cap for metric gluings")->check(CLI::PositiveNumber);
    suite_cmd->add_option("--report", report_path, "also write the JSON report here");
    auto* demo_cmd = app.add_subcommand("demo", "worked examples");
    demo_cmd->add_option("which", which, "metric or fincat")->required()->check(CLI::IsMember({"metric", "fincat"}));
    demo_cmd->add_option("--metric-cap", metric_cap, "quantale cap")->check(CLI::PositiveNumber);
    auto* job_cmd = app.add_subcommand("job", "run a job document");
    job_cmd->add_option("path", paths, "job document")->required()->expected(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? OK : STRUCTURAL;
    }

    try {
        if (*validate_cmd) {
            int worst = OK;
            Json all = Json::array();
            for (const auto& p : paths) {
                Report rep;
                std::string schema;
                try {
                    Json doc = read_document(p);
                    schema = schema_of(doc);
                    rep = validate_document(doc);
                } catch (const StructuralError& e) {
                    rep.add("document", false, e.what());
                    worst = STRUCTURAL;
                }
                if (worst != STRUCTURAL) worst = std::max(worst, exit_for(rep.verdict(), g));
                if (g.format == "json") {
                    Json j = report_json(rep);
                    j["path"] = p;
                    j["schema"] = schema;
                    all.push_back(j);
                } else {
                    std::cout << p << ": " << (rep.ok() ? "ok" : "FAIL") << (schema.empty() ? "" : " (" + schema + ")")
                              << "\n";
                    if (!rep.ok()) std::cout << rep.describe();
                }
            }
            if (g.format == "json") std::cout << canonical_dump(all);
            return worst;
        }
        if (*compose_cmd) return do_compose(g, load_all(paths), out);
        if (*collage_cmd) return do_collage(g, read_document(paths[0]), out);
        if (*check_cmd) return emit_report(g, "check " + kind, run_check(kind, load_all(paths), g.cap, morphism));
        if (*suite_cmd) {
            SuiteOptions o;
            o.seed = seed;
            o.scale = parse_scale(scale);
            o.cap = g.cap;
            o.metric_cap = metric_cap;
            auto r = run_suite(o);
            const std::string json = canonical_dump(r.json());
            if (!report_path.empty()) write_file(report_path, json);
            std::cout << (g.format == "json" ? json : r.summary());
            return exit_for(r.verdict(), g);
        }
        if (*demo_cmd) return do_demo(g, which, metric_cap);
        if (*job_cmd) {
            Json job = expect(read_document(paths[0]), "job");
            validate_document(job);
            std::vector<Json> inputs;
            for (const auto& in : job.at("inputs")) inputs.push_back(parse_document(in.dump()));
            const auto& cmd = job.at("command").get_ref<const std::string&>();
            const int cap = job.value("cap", g.cap);
            if (cmd == "compose") return do_compose(g, inputs, job.value("out", std::string()));
            if (inputs.size() != 1 && cmd == "collage") throw StructuralError("job: collage takes one input");
            if (cmd == "collage") return do_collage(g, inputs[0], job.value("out", std::string()));
            const std::string k = job.value("kind", std::string());
            return emit_report(g, "check " + k, run_check(k, inputs, cap, job.value("morphism", std::string("identity"))));
        }
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return STRUCTURAL;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed document: " << e.what() << "\n";
        return STRUCTURAL;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return STRUCTURAL;
    }
    return OK;
}
