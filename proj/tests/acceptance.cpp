// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "parcat/cli.hpp"
#include "parcat/corpus.hpp"
#include "parcat/errors.hpp"
#include "parcat/equivar.hpp"
#include "parcat/globalize.hpp"
#include "parcat/mutate.hpp"
#include "parcat/parallel.hpp"
#include "parcat/polyad.hpp"
#include "parcat/smash.hpp"
#include "parcat/specfile.hpp"

using namespace parcat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects sub-checks; the criterion passes when all of them do.
struct Outcome {
    bool ok = true;
    std::vector<std::string> lines;

    void expect(bool cond, const std::string& what) {
        lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
        ok = ok && cond;
    }
    void info(const std::string& what) { lines.push_back("     " + what); }
};

std::string str(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

const Instance& get(const std::string& name) {
    static std::map<std::string, Instance> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, corpus_instance(name)).first;
    return it->second;
}

const LinearAction& linear(const std::string& name) {
    static std::map<std::string, LinearAction> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, linear_action_of(action_doc(get(name)))).first;
    return it->second;
}

UnitalData unital(const PartialAction& t) {
    auto r = extract_unital_data(t);
    if (!r.data) throw NotUnital("no unital data");
    return *r.data;
}

bool has_prefix(const DiagramReport& r, const std::string& p) {
    for (const auto& [k, n] : r.counts)
        if (k.rfind(p, 0) == 0 && n > 0) return true;
    return false;
}

std::string first_failure(const DiagramReport& r) {
    if (r.failures.empty()) return "";
    const auto& f = r.failures.front();
    std::string w;
    for (const auto& x : f.witness) w += " " + x;
    return " [" + f.check + ":" + w + "]";
}

// --- 1 ---------------------------------------------------------------------

// Restrict the global permutation action on subsets to the ideal below `y`, and
// compare every C_g and 𝟙_g with mask arithmetic.
void restriction_case(Outcome& out, const std::string& global_name, const std::vector<int>& perm, unsigned y,
                      const std::function<std::string(unsigned)>& name_of, int points) {
    const auto t0 = Clock::now();
    const PartialAction& glob = get(global_name).action;
    std::set<std::string> below;
    for (unsigned m = 0; m < (1u << points); ++m)
        if (oracle::subset(m, y)) below.insert(name_of(m));
    std::vector<ObjId> ideal;
    for (int a = 0; a < glob.n(); ++a)
        if (below.count(glob.name(obj_at(a)))) ideal.push_back(obj_at(a));
    Restriction res = restrict_global(glob, Subcategory::full_on(glob.cat(), ideal));
    out.expect(res.report.passed(), global_name + " restriction report passed" + first_failure(res.report));
    auto u = unital(res.action);
    const auto pw = oracle::powers(perm);
    bool all = static_cast<int>(pw.size()) == res.action.order();
    std::string units;
    for (int g = 0; g < res.action.order() && all; ++g) {
        std::set<std::string> want, got;
        std::vector<unsigned> every;
        for (unsigned m = 0; m < (1u << points); ++m) every.push_back(m);
        std::set<unsigned> all_masks(every.begin(), every.end());
        for (unsigned m : oracle::restricted_domain(pw[g], y, all_masks)) want.insert(name_of(m));
        for (ObjId x : res.action.domains[g].sub.object_list()) got.insert(res.action.name(x));
        const std::string unit_want = name_of(y & oracle::permute(pw[g], y));
        const std::string unit_got = res.action.name(u.unit(g));
        all = all && want == got && unit_want == unit_got;
        units += " 1_" + res.action.elem(g) + "=" + unit_got;
    }
    out.expect(all, global_name + " domains and units match the mask oracle:" + units);
    const double dt = seconds_since(t0);
    out.expect(dt < 1.0, global_name + " restriction in " + str(dt) + " s (< 1 s)");
}

Outcome criterion_restriction() {
    Outcome out;
    restriction_case(out, "inst-top-global", {1, 0, 2}, 0b101, oracle::open_name, 3);
    restriction_case(out, "inst-fus-global", {1, 2, 0}, 0b011, oracle::support_name, 3);
    const auto& top = get("inst-top").action;
    auto u = unital(top);
    std::set<std::string> cg;
    for (ObjId x : top.domains[1].sub.object_list()) cg.insert(top.name(x));
    out.expect(cg == std::set<std::string>{"{}", "{3}"} && top.name(u.unit(1)) == "{3}",
               "inst-top: C_g = {{}, {3}}, 1_g = {3}");
    const auto& fus = get("inst-fus").action;
    auto uf = unital(fus);
    out.expect(fus.name(uf.unit(1)) == "M2" && fus.name(uf.unit(2)) == "M1", "inst-fus: 1_g = M2, 1_g2 = M1");
    return out;
}

// --- 2 ---------------------------------------------------------------------

Outcome criterion_axioms() {
    Outcome out;
    int passed = 0;
    const auto names = sweep_names();
    for (const auto& n : names) {
        auto r = validate_partial_action(get(n).action);
        if (r.passed())
            ++passed;
        else
            out.info(n + " failed" + first_failure(r));
    }
    out.expect(names.size() >= 10 && passed == static_cast<int>(names.size()),
               "sweep: " + std::to_string(passed) + "/" + std::to_string(names.size()) + " instances valid");

    int made = 0, shape = 0, shape_caught = 0, value = 0, value_caught = 0, unnamed = 0;
    std::map<std::string, int> per_field;
    for (const char* inst : {"inst-top", "inst-fus", "inst-fus-gf3", "inst-fus-twisted", "top-cycle4"})
        for (const auto& field : mutation_fields())
            for (unsigned seed = 1; seed <= 3; ++seed) {
                auto m = corrupt(get(inst).action, field, seed);
                if (!m) continue;
                ++made;
                ++per_field[field.substr(0, field.find_first_of(":."))];
                auto r = validate_partial_action(m->action);
                const bool caught = !r.passed();
                (m->shape_breaking ? shape : value) += 1;
                (m->shape_breaking ? shape_caught : value_caught) += caught ? 1 : 0;
                for (const auto& f : r.failures) unnamed += f.witness.empty() ? 1 : 0;
            }
    std::string fields;
    for (const auto& [f, k] : per_field) fields += " " + f + "=" + std::to_string(k);
    out.expect(made >= 50, "mutants: " + std::to_string(made) + " (>= 50);" + fields);
    out.expect(per_field.size() == 5, "every field corrupted (gamma, u, J, T, unit)");
    out.expect(shape > 0 && shape_caught == shape,
               "shape-breaking detected: " + std::to_string(shape_caught) + "/" + std::to_string(shape));
    out.info("same-endpoint mutants detected: " + std::to_string(value_caught) + "/" + std::to_string(value));
    out.expect(unnamed == 0, "failures without a witness: " + std::to_string(unnamed));
    return out;
}

// --- 3 ---------------------------------------------------------------------

Outcome criterion_globalization() {
    Outcome out;
    const auto t0 = Clock::now();
    const auto& t = get("inst-top").action;
    auto u = unital(t);
    auto g = build_globalization(t, u);
    auto r = validate_globalization(t, u, g);
    const double dt = seconds_since(t0);
    const auto& names = g.category().cat.object_names();
    const std::set<std::string> got(names.begin(), names.end());
    const auto want = oracle::oracle_names(oracle::closure_oracle({1, 0, 2}, 0b101, {0, 1, 2, 3, 4, 5, 6, 7}));
    out.expect(names.size() == 6 && got == want, "objects: " + std::to_string(names.size()) + ", closure oracle agrees");
    for (const char* k : {"cond1", "cond2", "cond3", "phi-tau/tau-gamma"})
        out.expect(has_prefix(r, k) && [&] {
            for (const auto& [c, n] : r.failure_totals)
                if (c.rfind(k, 0) == 0) return false;
            return true;
        }(), std::string(k) + " checked, no failures");
    out.expect(r.passed(), "whole report passed" + first_failure(r));
    out.info("morphism pentagon instances: " + std::to_string(r.counts.count("phi-tau/tau-gamma") ? r.counts.at("phi-tau/tau-gamma") : 0));
    out.expect(dt < 2.0, "time " + str(dt) + " s (< 2 s)");
    return out;
}

// --- 4 ---------------------------------------------------------------------

Outcome criterion_polyad() {
    Outcome out;
    int ok = 0;
    double worst = 0;
    std::string worst_name;
    const auto names = corpus_names();
    for (const auto& n : names) {
        const auto t0 = Clock::now();
        auto p = build_polyad(get(n).action);
        const double dt = seconds_since(t0);
        if (dt > worst) worst = dt, worst_name = n;
        const bool laws = has_prefix(p.report, "monad-");
        bool inverses = true;
        for (int g = 0; g < get(n).action.order(); ++g) {
            const std::string pre = "fusion-" + get(n).action.elem(g) + "/";
            inverses = inverses && has_prefix(p.report, pre + "hl-invertible") && has_prefix(p.report, pre + "hr-invertible");
        }
        const bool good = p.report.passed() && laws && inverses && static_cast<int>(p.polyad.monads.size()) == get(n).action.order();
        if (good)
            ++ok;
        else
            out.info(n + ": " + (laws ? "" : "monad laws missing ") + (inverses ? "" : "inverses missing ") + first_failure(p.report));
    }
    out.expect(ok == static_cast<int>(names.size()),
               "monad laws and two-sided fusion inverses: " + std::to_string(ok) + "/" + std::to_string(names.size()) + " corpus instances");
    out.expect(worst < 5.0, "slowest " + worst_name + " " + str(worst) + " s (< 5 s)");
    return out;
}

// --- 5 ---------------------------------------------------------------------

Outcome criterion_equivariant() {
    Outcome out;
    for (const char* n : {"inst-top-global", "inst-fus-global"}) {
        const auto& t = get(n).action;
        int objects = 0, there = 0, back = 0;
        for (int k = 0; k < t.n(); ++k)
            for (const auto& x : enumerate_equivariant(t, obj_at(k))) {
                ++objects;
                auto th = to_global(t, x);
                there += validate_global_equivariant(t, th).passed() && from_global(t, th) == x;
                back += to_global(t, from_global(t, th)) == th;
            }
        out.expect(objects > 0 && there == objects && back == objects,
                   std::string(n) + ": " + std::to_string(objects) + " objects, partial→global→partial " +
                       std::to_string(there) + ", global→partial→global " + std::to_string(back));
    }
    const auto& top = get("inst-top").action;
    std::size_t total = 0;
    for (int k = 0; k < top.n(); ++k) total += enumerate_equivariant(top, obj_at(k)).size();
    out.expect(total == 4, "inst-top equivariant objects: " + std::to_string(total) + " (expected 4)");
    return out;
}

// --- 6 ---------------------------------------------------------------------

Outcome criterion_trace() {
    Outcome out;
    const auto t0 = Clock::now();
    const auto& la = linear("inst-fus");
    const auto& t = la.action;
    auto obj = [&](const char* s) { return *t.cat().find_object(s); };
    EnvObject m1{obj("M1")}, one{obj("M12")};
    auto tr1 = partial_trace(la, m1);
    out.expect(tr1.report.passed() && la.env.isomorphic(tr1.object.carrier, one),
               "Tr(M1) = " + la.env.describe(tr1.object.carrier) + " is isomorphic to M12");
    auto tru = trace_object(la, one);
    out.expect(!la.env.isomorphic(tru, one), "Tr(M12) = " + la.env.describe(tru) + " is not isomorphic to the unit M12");
    auto r = check_trace_functor(la);
    out.expect(r.passed() && has_prefix(r, "trace-composition") && has_prefix(r, "trace-identity"),
               "functoriality: " + std::to_string(r.counts.count("trace-composition") ? r.counts.at("trace-composition") : 0) +
                   " composable pairs" + first_failure(r));
    const double dt = seconds_since(t0);
    out.expect(dt < 5.0, "time " + str(dt) + " s (< 5 s)");
    return out;
}

// --- 7 ---------------------------------------------------------------------

Outcome criterion_smash() {
    Outcome out;
    const auto t0 = Clock::now();
    std::map<std::string, long long> stated{{"inst-top", 4096}, {"inst-fus", 4096}};
    for (const char* n : {"inst-top", "inst-fus"}) {
        auto s = build_smash(linear(n));
        auto r = validate_smash_coherence(s);
        const long long g = static_cast<long long>(s.generators.size());
        const long long pent = r.counts.count("pentagon") ? r.counts.at("pentagon") : 0;
        const long long tri = r.counts.count("triangle") ? r.counts.at("triangle") : 0;
        out.expect(r.passed(), std::string(n) + ": zero coherence failures" + first_failure(r));
        out.expect(pent == g * g * g * g && tri == g * g,
                   std::string(n) + ": " + std::to_string(g) + " generators, pentagon " + std::to_string(pent) +
                       " = all quadruples, triangle " + std::to_string(tri) + " = all pairs");
        out.expect(pent == stated[n], std::string(n) + ": pentagon count " + std::to_string(pent) + " vs required " +
                                          std::to_string(stated[n]));
    }
    const double dt = seconds_since(t0);
    out.expect(dt < 30.0, "time " + str(dt) + " s (< 30 s)");
    return out;
}

// --- 8 ---------------------------------------------------------------------

Outcome criterion_canonical() {
    Outcome out;
    for (const char* n : {"inst-top", "inst-fus"}) {
        auto s = build_smash(linear(n));
        auto cf = canonical_functors(s);
        bool all = cf.report.passed();
        for (const char* k : {"PR1", "PR2", "PR3", "PR4", "compat-i", "compat-ii"}) all = all && has_prefix(cf.report, k);
        out.expect(all && !cf.witnesses.empty(), std::string(n) + ": PR1-PR4, compatibility (i), (ii); " +
                                                     std::to_string(cf.witnesses.size()) + " iso witnesses" +
                                                     first_failure(cf.report));
        auto run = [&](const MonoidalTarget& d, const SemigroupalFunctor& phi, const std::vector<ObjId>& pi,
                       const std::string& label) {
            auto res = covariant_psi(s, d, phi, pi);
            out.expect(res.report.passed() && has_prefix(res.report, "psi-phi0") && has_prefix(res.report, "psi-pi0"),
                       std::string(n) + ", " + label + ": Psi∘phi0 ≅ phi0, Psi∘pi0 ≅ pi0" + first_failure(res.report));
        };
        run(smash_target(s), cf.phi0, cf.pi0, "into the smash product");
        if (std::string(n) == "inst-top") {
            auto end = end_target(s);
            run(end.target, end.phi, end.pi, "into End(C)");
        }
    }
    return out;
}

// --- 9 ---------------------------------------------------------------------

Outcome criterion_algebra() {
    Outcome out;
    for (const char* n : {"inst-top", "inst-fus"}) {
        auto a = algebra_object(linear(n));
        bool laws = a.report.passed() && has_prefix(a.report, "algebra-assoc") && has_prefix(a.report, "algebra-unit-left") &&
                    has_prefix(a.report, "algebra-unit-right");
        out.expect(laws, std::string(n) + ": associativity and unit laws" + first_failure(a.report));
        out.expect(has_prefix(a.report, "tilde/tilde-square"), std::string(n) + ": sigma-tilde square checked");
        bool flagged = false;
        for (const auto& note : a.report.notes) flagged = flagged || note.find("machine-verified, instance-level") != std::string::npos;
        out.expect(flagged, std::string(n) + ": report flags \"machine-verified, instance-level\"");
    }
    return out;
}

// --- 10 --------------------------------------------------------------------

Outcome criterion_infrastructure() {
    Outcome out;
    int docs = 0, same = 0;
    auto round_trip = [&](const SpecFile& s) {
        ++docs;
        const auto text = save_spec(s);
        auto back = load_spec(text);
        same += back == s && save_spec(back) == text;
    };
    for (const auto& n : corpus_names()) round_trip(corpus_spec(n));
    for (const char* n : {"inst-top", "inst-fus", "inst-fus-twisted"}) {
        const auto& i = get(n);
        auto doc = action_doc(i);
        round_trip(SpecFile{CategoryDoc{i.action.ambient, i.linear}});
        round_trip(SpecFile{GlobalizationDoc{doc, build_globalization(i.action)}});
        round_trip(SpecFile{SmashDoc{doc, build_smash(linear_action_of(doc))}});
        auto withp = doc;
        withp.polyad = build_polyad(i.action).polyad;
        round_trip(SpecFile{withp});
        const auto& la = linear(n);
        EquivariantDoc e{doc, {}, {}, std::nullopt, std::nullopt};
        for (int k = 0; k < i.action.n(); ++k)
            for (auto& x : enumerate_equivariant(i.action, obj_at(k))) e.objects.push_back(x);
        for (int k = 0; k < i.action.n(); ++k) e.env_objects.push_back(partial_trace(la, {obj_at(k)}).object);
        auto alg = algebra_object(la);
        e.env_objects.push_back(from_tilde(la, alg.object, alg.tilde));
        e.mu = alg.mu;
        e.eta = alg.eta;
        round_trip(SpecFile{e});
    }
    out.expect(same == docs, "load(save(x)) = x: " + std::to_string(same) + "/" + std::to_string(docs) + " documents");

    const int n_threads = 4;
    std::vector<std::function<CommandOutput()>> cmds;
    for (const char* in : {"corpus:inst-top", "corpus:inst-fus"}) {
        cmds.push_back([=] { return cmd_validate({in, false}); });
        for (const char* op : {"smash", "globalize", "trace", "polyad", "equivariantize", "algebra"})
            cmds.push_back([=] { return cmd_construct({op, in, std::nullopt, std::nullopt, false}); });
        cmds.push_back([=] { return cmd_enumerate({"central-idempotents", in, std::nullopt}); });
        cmds.push_back([=] { return cmd_enumerate({"equivariant", in, std::nullopt}); });
    }
    int identical = 0;
    for (const auto& c : cmds) {
        set_thread_override(1);
        auto a = c();
        set_thread_override(n_threads);
        auto b = c();
        identical += render_json(a.report) == render_json(b.report) && render_text(a.report) == render_text(b.report) &&
                     (a.output.has_value() == b.output.has_value()) &&
                     (!a.output || save_spec(*a.output) == save_spec(*b.output));
    }
    set_thread_override(0);
    out.expect(identical == static_cast<int>(cmds.size()),
               "reports and outputs byte-identical at 1 and " + std::to_string(n_threads) + " threads: " +
                   std::to_string(identical) + "/" + std::to_string(cmds.size()) + " commands");
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"restriction of a global action", criterion_restriction},
        {"partial-action axioms and mutation campaign", criterion_axioms},
        {"globalization", criterion_globalization},
        {"Hopf polyad", criterion_polyad},
        {"equivariantization round trip", criterion_equivariant},
        {"partial trace", criterion_trace},
        {"smash coherence", criterion_smash},
        {"canonical functors and covariant pairs", criterion_canonical},
        {"algebra object", criterion_algebra},
        {"spec round trip and thread-independent reports", criterion_infrastructure},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double dt = seconds_since(t0);
        failed += o.ok ? 0 : 1;
        std::printf("%s %2zu %s (%s s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), str(dt).c_str());
        for (const auto& l : o.lines) std::printf("        %s\n", l.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
