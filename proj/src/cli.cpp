#include "parcat/cli.hpp"

#include <cstdlib>
#include <fstream>

#include "CLI11.hpp"
#include "parcat/errors.hpp"
#include "parcat/idempotent.hpp"
#include "parcat/mutate.hpp"

namespace parcat {

namespace {

RenderedReport start(const std::string& command, const std::string& input, const std::string& text) {
    RenderedReport r;
    r.command = command;
    r.input = input;
    r.spec_hash = spec_hash(text);
    return r;
}

void fact(RenderedReport& r, std::string k, std::string v) { r.facts.emplace_back(std::move(k), std::move(v)); }
void fact(RenderedReport& r, std::string k, long long v) { fact(r, std::move(k), std::to_string(v)); }

std::string field_of(const std::optional<Linearization>& l) { return l ? l->lin.field.tag() : "none"; }

void describe_category(RenderedReport& r, const MonoidalStructure& m) {
    fact(r, "objects", m.n());
    fact(r, "morphisms", m.m());
}

void validate_linear_part(DiagramReport& r, const MonoidalStructure& m, const std::optional<Linearization>& l) {
    if (!l) return;
    r.merge(validate_linear(l->lin), "linear/");
    r.merge(check_linearization(m, *l), "linearization/");
}

DiagramReport validate_action_doc(const ActionDoc& d, bool strictness) {
    DiagramReport r = validate_partial_action(d.action);
    validate_linear_part(r, d.action.ambient, d.linear);
    auto u = extract_unital_data(d.action);
    for (const auto& [k, v] : u.report.counts) r.tick("unital/" + k, v);
    if (strictness) {
        for (const auto& f : u.report.failures) {
            std::string w = "strictness: " + f.check + ": " + f.description;
            for (const auto& x : f.witness) w += " [" + x + "]";
            r.warn(w);
        }
        for (const auto& w : u.report.warnings) r.warn("strictness: " + w);
    }
    r.note(u.data ? "unital data found" : "no unital data (smash, trace, algebra and globalization need it)");
    if (d.polyad) {
        for (const auto& m : d.polyad->monads) r.merge(validate_monad(d.action.cat(), m), "polyad/");
        const auto& c = d.action.cat();
        for (const auto& f : d.polyad->fusion) {
            auto inverse_pair = [&](const std::vector<MorId>& a, const std::vector<MorId>& b, const char* name) {
                const int n = d.action.n();
                for (std::size_t k = 0; k < a.size(); ++k) {
                    if (!valid(a[k])) continue;
                    r.tick(std::string("polyad/") + name);
                    bool ok = k < b.size() && valid(b[k]) && c.compose_raw(b[k], a[k]) == c.id(c.dom(a[k])) &&
                              c.compose_raw(a[k], b[k]) == c.id(c.cod(a[k]));
                    if (!ok)
                        r.fail(std::string("polyad/") + name, "stored inverse is not two-sided",
                               {"g=" + d.polyad->source.names.at(f.element), d.action.name(obj_at(static_cast<int>(k) / n)),
                                d.action.name(obj_at(static_cast<int>(k) % n))});
                }
            };
            inverse_pair(f.hl, f.hl_inverse, "hl-inverse");
            inverse_pair(f.hr, f.hr_inverse, "hr-inverse");
        }
    }
    return r;
}

// (A, μ, η) laws in the envelope, A⊗A⊗A expanded lexicographically.
void check_algebra(DiagramReport& r, const LinearAction& la, const EnvObject& a, const EnvMorphism& mu, const EnvMorphism& eta) {
    const auto& env = la.env;
    r.tick("algebra-shape");
    if (mu.dom != env.tensor(a, a) || mu.cod != a || eta.cod != a || eta.dom != la.one(la.group().e())) {
        r.fail("algebra-shape", "μ or η has the wrong endpoints", {env.describe(a)});
        return;
    }
    r.tick("algebra-assoc");
    if (env.compose(mu, env.tensor(mu, env.id(a))) != env.compose(mu, env.tensor(env.id(a), mu)))
        r.fail("algebra-assoc", "μ(μ⊗1) ≠ μ(1⊗μ)", {env.describe(a)});
    r.tick("algebra-unit");
    if (env.compose(mu, env.tensor(eta, env.id(a))) != env.id(a) || env.compose(mu, env.tensor(env.id(a), eta)) != env.id(a))
        r.fail("algebra-unit", "η is not a two-sided unit", {env.describe(a)});
}

const ActionDoc& need_action(const SpecFile& s) {
    if (s.kind() != SpecKind::action) throw MalformedSpec("expected an action document, got " + kind_name(s.kind()));
    return std::get<ActionDoc>(s.body);
}

ObjId object_named(const PartialAction& t, const std::string& name) {
    auto o = t.cat().find_object(name);
    if (!o) throw MalformedSpec("no object named '" + name + "'");
    return *o;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const MalformedSpec*>(&e)) return kExitMalformed;
    if (dynamic_cast<const SearchBudgetExceeded*>(&e) || dynamic_cast<const ClosureOverflow*>(&e)) return kExitBudget;
    return kExitFailed;
}

CommandOutput cmd_validate(const ValidateOptions& o) {
    const std::string text = read_spec_text(o.input);
    SpecFile s = load_spec(text);
    CommandOutput out{start("validate", o.input, text), std::nullopt};
    auto& rr = out.report;
    auto& r = rr.report;
    fact(rr, "kind", kind_name(s.kind()));
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, CategoryDoc>) {
                fact(rr, "field", field_of(d.linear));
                describe_category(rr, d.cat);
                r.merge(validate_category(d.cat.cat), "category/");
                if (!d.cat.tensor_obj.empty() && r.passed()) r.merge(validate_semigroupal(d.cat), "semigroupal/");
                if (r.passed()) validate_linear_part(r, d.cat, d.linear);
                if (d.cat.n() == 0) r.warn("empty category: every check is vacuous");
            } else if constexpr (std::is_same_v<D, ActionDoc>) {
                fact(rr, "field", field_of(d.linear));
                describe_category(rr, d.action.ambient);
                fact(rr, "group order", d.action.order());
                r.merge(validate_action_doc(d, o.strictness_warnings));
            } else if constexpr (std::is_same_v<D, GlobalizationDoc>) {
                describe_category(rr, d.glob.action.ambient);
                r.merge(validate_action_doc(d.source, o.strictness_warnings), "source/");
                r.merge(validate_partial_action(d.glob.action), "global/");
                if (r.passed()) {
                    auto u = extract_unital_data(d.source.action);
                    if (!u.data) throw NotUnital("source action has no unital data");
                    r.merge(validate_globalization(d.source.action, *u.data, d.glob), "globalization/");
                }
            } else if constexpr (std::is_same_v<D, SmashDoc>) {
                const auto& sm = d.smash;
                describe_category(rr, sm.base);
                fact(rr, "generators", sm.n());
                for (int a = 0; a < sm.n(); ++a) {
                    r.tick("grades");
                    const auto& g = sm.generators[a];
                    if (!sm.source.action.in(g.grade, g.object))
                        r.fail("grades", "generator outside its grade's domain", {sm.name(obj_at(a))});
                }
                r.merge(validate_smash_coherence(sm));
            } else {
                const auto& t = d.source.action;
                fact(rr, "objects", static_cast<long long>(d.objects.size()));
                fact(rr, "envelope objects", static_cast<long long>(d.env_objects.size()));
                for (std::size_t i = 0; i < d.objects.size(); ++i)
                    r.merge(validate_equivariant_object(t, d.objects[i]), "object/");
                if (!d.env_objects.empty() || d.mu) {
                    LinearAction la = linear_action_of(d.source);
                    for (const auto& x : d.env_objects) r.merge(validate_equivariant_object(la, x), "env-object/");
                    if (d.mu && d.eta) {
                        if (d.env_objects.empty()) throw MalformedSpec("algebra section without its object");
                        check_algebra(r, la, d.env_objects.back().carrier, *d.mu, *d.eta);
                    }
                }
            }
        },
        s.body);
    return out;
}

CommandOutput cmd_construct(const ConstructOptions& o) {
    const std::string text = read_spec_text(o.input);
    SpecFile s = load_spec(text);
    const ActionDoc& doc = need_action(s);
    CommandOutput out{start("construct " + o.op, o.input, text), std::nullopt};
    auto& rr = out.report;
    auto& r = rr.report;
    {
        DiagramReport in = validate_partial_action(doc.action);
        r.tick("input-valid");
        if (!in.passed()) {
            r.merge(in, "input/");
            r.fail("input-valid", "input action does not validate");
            return out;
        }
    }
    const auto& t = doc.action;
    if (o.op == "smash") {
        SmashOptions opts;
        opts.skip_pentagon = o.skip_pentagon;
        if (o.cap) opts.multiplicity_cap = static_cast<int>(*o.cap);
        auto sm = build_smash(linear_action_of(doc), opts);
        fact(rr, "generators", sm.n());
        fact(rr, "morphisms", sm.base.m());
        r.merge(validate_smash_coherence(sm));
        r.merge(canonical_functors(sm).report, "canonical/");
        r.merge(check_odot_action(sm), "odot/");
        fact(rr, "pentagon", r.counts.count("pentagon") ? (r.has_failure("pentagon") ? "failed" : "passed") : "skipped");
        fact(rr, "triangle", r.has_failure("triangle") ? "failed" : "passed");
        out.output = SpecFile{SmashDoc{doc, std::move(sm)}};
    } else if (o.op == "globalize") {
        GlobalizeOptions opts;
        if (o.cap) opts.object_cap = *o.cap;
        auto u = extract_unital_data(t);
        if (!u.data) throw NotUnital("the action has no unital data");
        auto g = build_globalization(t, *u.data, opts);
        fact(rr, "objects", g.action.n());
        fact(rr, "morphisms", g.action.cat().morphism_count());
        r.merge(g.report, "assembly/");
        r.merge(validate_globalization(t, *u.data, g), "globalization/");
        out.output = SpecFile{GlobalizationDoc{doc, std::move(g)}};
    } else if (o.op == "trace") {
        LinearAction la = linear_action_of(doc);
        EquivariantDoc d{doc, {}, {}, std::nullopt, std::nullopt};
        std::vector<ObjId> objs;
        if (o.object) objs.push_back(object_named(t, *o.object));
        else
            for (int k = 0; k < t.n(); ++k) objs.push_back(obj_at(k));
        for (ObjId x : objs) {
            auto tr = partial_trace(la, {x});
            const std::string label = "Tr(" + t.name(x) + ")";
            fact(rr, label, la.env.describe(tr.object.carrier));
            std::string iso = "no single object";
            for (int k = 0; k < t.n(); ++k)
                if (la.env.isomorphic(tr.object.carrier, {obj_at(k)})) {
                    iso = t.name(obj_at(k));
                    break;
                }
            fact(rr, label + " isomorphic to", iso);
            r.merge(tr.report, label + "/");
            d.env_objects.push_back(std::move(tr.object));
        }
        if (!o.object) r.merge(check_trace_functor(la), "functor/");
        out.output = SpecFile{std::move(d)};
    } else if (o.op == "polyad") {
        auto p = build_polyad(t);
        fact(rr, "monads", static_cast<long long>(p.polyad.monads.size()));
        fact(rr, "fusion operators", static_cast<long long>(p.polyad.fusion.size()));
        r.merge(p.report);
        ActionDoc d = doc;
        d.polyad = std::move(p.polyad);
        out.output = SpecFile{std::move(d)};
    } else if (o.op == "equivariantize") {
        EquivariantDoc d{doc, {}, {}, std::nullopt, std::nullopt};
        std::vector<ObjId> objs;
        if (o.object) objs.push_back(object_named(t, *o.object));
        else
            for (int k = 0; k < t.n(); ++k) objs.push_back(obj_at(k));
        for (ObjId x : objs) {
            auto found = enumerate_equivariant(t, x, o.cap.value_or(1'000'000));
            fact(rr, t.name(x), static_cast<long long>(found.size()));
            for (auto& e : found) {
                r.merge(validate_equivariant_object(t, e), "object/");
                d.objects.push_back(std::move(e));
            }
        }
        fact(rr, "equivariant objects", static_cast<long long>(d.objects.size()));
        out.output = SpecFile{std::move(d)};
    } else if (o.op == "algebra") {
        LinearAction la = linear_action_of(doc);
        auto a = algebra_object(la);
        fact(rr, "blocks", static_cast<long long>(a.blocks.size()));
        fact(rr, "object", la.env.describe(a.object));
        r.merge(a.report);
        EquivariantDoc d{doc, {}, {}, a.mu, a.eta};
        if (a.report.passed()) d.env_objects.push_back(from_tilde(la, a.object, a.tilde));
        else d.mu = d.eta = std::nullopt;
        out.output = SpecFile{std::move(d)};
    } else {
        throw MalformedSpec("unknown construction '" + o.op + "'");
    }
    return out;
}

CommandOutput cmd_enumerate(const EnumerateOptions& o) {
    const std::string text = read_spec_text(o.input);
    SpecFile s = load_spec(text);
    const ActionDoc& doc = need_action(s);
    const auto& t = doc.action;
    CommandOutput out{start("enumerate " + o.what, o.input, text), std::nullopt};
    auto& rr = out.report;
    auto& r = rr.report;
    if (o.what == "central-idempotents") {
        auto all = enumerate_central_idempotents(t.ambient);
        fact(rr, "count", static_cast<long long>(all.size()));
        for (const auto& c : all) {
            r.tick("central-idempotent");
            fact(rr, t.name(c.canonical.e),
                 std::to_string(c.witness_count) + (c.count_capped ? "+" : "") + " witness(es)");
        }
    } else if (o.what == "equivariant") {
        std::vector<ObjId> objs;
        if (o.carrier) objs.push_back(object_named(t, *o.carrier));
        else
            for (int k = 0; k < t.n(); ++k) objs.push_back(obj_at(k));
        long long total = 0;
        for (ObjId x : objs) {
            auto found = enumerate_equivariant(t, x, o.budget);
            total += static_cast<long long>(found.size());
            fact(rr, t.name(x), static_cast<long long>(found.size()));
            for (const auto& e : found) r.merge(validate_equivariant_object(t, e), "object/");
        }
        fact(rr, "count", total);
    } else {
        throw MalformedSpec("unknown enumeration '" + o.what + "'");
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"parcat: partial group actions on finite strict monoidal categories", "parcat"};
    app.require_subcommand(1);
    std::string format = "text";
    std::string out_path;

    ValidateOptions vo;
    auto* v = app.add_subcommand("validate", "check a spec file or corpus instance");
    v->add_option("path", vo.input, "file or corpus:<name>")->required();
    v->add_flag("--strictness-warnings", vo.strictness_warnings, "report strictness preconditions as warnings");

    ConstructOptions co;
    long long cap = 0;
    std::string object;
    auto* c = app.add_subcommand("construct", "build a derived structure");
    c->add_option("op", co.op)->required()->check(
        CLI::IsMember({"smash", "globalize", "trace", "polyad", "equivariantize", "algebra"}));
    c->add_option("--in", co.input, "file or corpus:<name>")->required();
    c->add_option("--out", out_path, "where to write the constructed structure");
    auto* cap_opt = c->add_option("--cap", cap, "closure / multiplicity / search cap")->check(CLI::PositiveNumber);
    auto* obj_opt = c->add_option("--object", object, "restrict to one object");
    c->add_flag("--skip-pentagon", co.skip_pentagon, "smash: construct without the pentagon sweep");

    EnumerateOptions eo;
    std::string carrier;
    auto* e = app.add_subcommand("enumerate", "list structures on an action");
    e->add_option("what", eo.what)->required()->check(CLI::IsMember({"central-idempotents", "equivariant"}));
    e->add_option("--in", eo.input, "file or corpus:<name>")->required();
    auto* car_opt = e->add_option("--carrier", carrier, "only this carrier");
    e->add_option("--budget", eo.budget, "search node budget")->check(CLI::PositiveNumber);

    for (auto* sub : {v, c, e})
        sub->add_option("--report", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex, out, err);
        return code == 0 ? kExitPass : kExitMalformed;
    }

    if (const char* env = std::getenv("PARCAT_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || n <= 0) {
            err << "PARCAT_THREADS must be a positive integer, got '" << env << "'\n";
            return kExitMalformed;
        }
    }

    try {
        CommandOutput res;
        if (v->parsed()) {
            res = cmd_validate(vo);
        } else if (c->parsed()) {
            if (*cap_opt) co.cap = cap;
            if (*obj_opt) co.object = object;
            res = cmd_construct(co);
        } else {
            if (*car_opt) eo.carrier = carrier;
            res = cmd_enumerate(eo);
        }
        if (!out_path.empty()) {
            if (!res.output) {
                err << "nothing to write\n";
            } else {
                const std::string text = save_spec(*res.output);
                std::ofstream f(out_path, std::ios::binary);
                if (!f) {
                    err << "cannot write " << out_path << "\n";
                    return kExitMalformed;
                }
                f << text;
                res.report.facts.emplace_back("output", out_path);
                res.report.facts.emplace_back("output hash", spec_hash(text));
                err << "wrote " << out_path << "\n";
            }
        }
        out << (format == "json" ? render_json(res.report) : render_text(res.report));
        return res.exit_code();
    } catch (const std::exception& ex) {
        err << ex.what() << "\n";
        return exit_code_for(ex);
    }
}

}  // namespace parcat
