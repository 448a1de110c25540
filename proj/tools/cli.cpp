#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "json.hpp"
#include "qrl/differentials.hpp"
#include "qrl/enumeration.hpp"
#include "qrl/errors.hpp"
#include "qrl/genus3.hpp"
#include "qrl/quartic.hpp"
#include "qrl/reduction.hpp"

namespace qrl::cli {

namespace {

using nlohmann::json;

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json git_json(const GitReport& g) {
    return {{"status", to_string(g.status)}, {"reason", g.reason}, {"small_characteristic", g.small_characteristic}};
}

json factorization_json(const Factorization& f) {
    json factors = json::array();
    for (const auto& x : f.factors)
        factors.push_back({{"form", x.form.to_string()},
                           {"degree", x.degree},
                           {"multiplicity", x.multiplicity},
                           {"field_degree", x.field_degree}});
    return {{"field", f.embedding.target.to_string()}, {"scalar", f.scalar.to_string()}, {"factors", factors}};
}

json fiber_json(const SpecialFiber& s) {
    json comps = json::array();
    for (const auto& c : s.components)
        comps.push_back({{"kind", c.kind},
                         {"degree", c.degree},
                         {"arithmetic_genus", c.arithmetic_genus},
                         {"delta", c.delta},
                         {"geometric_genus", c.geometric_genus}});
    return {{"graph", to_json(s.graph)}, {"components", comps}, {"leg_field_degrees", s.leg_field_degrees}};
}

json cmd_enumerate(int genus, int legs, bool count_only, bool unlabeled) {
    EnumerationOptions opts;
    opts.labeled_legs = !unlabeled;
    if (count_only) return count_stable(genus, legs, opts);
    const auto graphs = enumerate_stable(genus, legs, opts);
    json arr = json::array();
    for (const auto& g : graphs) arr.push_back(to_json(g));
    return {{"genus", genus}, {"legs", legs}, {"labeled_legs", opts.labeled_legs}, {"count", graphs.size()},
            {"graphs", arr}};
}

json cmd_classify(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON in '" + path + "'", e.byte);
    }
    return to_json(classify_genus3(graph_from_json(j)));
}

json cmd_analyze(const std::string& field, const std::string& poly, std::optional<unsigned> depth) {
    const FiniteField k = FiniteField::parse(field);
    const PlaneQuartic q = PlaneQuartic::parse(poly, k);
    const unsigned d = depth ? *depth : default_search_depth();
    const GitReport git = git_status(q, d);
    json out = {{"field", k.to_string()}, {"poly", q.form().to_string()}};
    out["singularities"] = to_json(git.singularities);
    out["git"] = git_json(git);
    out["factorization"] = k.size() <= kFactorFieldBound ? factorization_json(factor_absolutely(q.form())) : json();
    out["special_fiber"] = git.status == GitStatus::stable ? fiber_json(special_fiber_graph(q, d)) : json();
    return out;
}

json cmd_predict(const std::string& field, const std::string& poly) {
    const FiniteField k = FiniteField::parse(field);
    const PlaneQuartic q = PlaneQuartic::parse(poly, k);
    const ReductionPrediction p = predict_reduction_types(q, default_search_depth());
    if (p.status == "predicted" && !p.consistent()) throw InvariantViolation("prediction failed its consistency flags");
    json out = to_json(p);
    out["field"] = k.to_string();
    out["poly"] = q.form().to_string();
    return out;
}

json cmd_verify(const std::string& field) {
    const AppendixReport r = verify_tricuspidal(FiniteField::parse(field));
    if (!r.all_passed()) throw InvariantViolation("appendix check failed: " + to_json(r).dump());
    return to_json(r);
}

json cmd_types() {
    json rows = json::array();
    std::map<std::string, int> counts;
    for (const auto& t : all_types()) {
        json row = to_json(t);
        row["graph"] = to_json(t.graph);
        rows.push_back(row);
        ++counts[to_string(t.hyperelliptic)];
    }
    return {{"count", rows.size()}, {"class_counts", counts}, {"types", rows}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable graphs, genus-3 types and plane quartics over finite fields", "qrl"};
    app.require_subcommand(1);

    int genus = 0, legs = 0;
    bool count_only = false, unlabeled = false;
    auto* en = app.add_subcommand("enumerate", "List stable graphs of genus G with N legs");
    en->add_option("--genus", genus, "Genus")->required();
    en->add_option("--legs", legs, "Number of legs")->required();
    en->add_flag("--count-only", count_only, "Print only the number of classes");
    en->add_flag("--unlabeled", unlabeled, "Count up to permutation of the legs");

    std::string graph_file;
    auto* cl = app.add_subcommand("classify", "Name a stable genus-3 graph");
    cl->add_option("--graph", graph_file, "Graph JSON file")->required();

    std::string field, poly;
    std::optional<unsigned> depth;
    auto* an = app.add_subcommand("analyze-quartic", "Singularities, GIT status and factorization of a quartic");
    an->add_option("--field", field, "p or p^k")->required();
    an->add_option("--poly", poly, "Quartic form in x, y, z")->required();
    an->add_option("--search-depth", depth, "Largest extension degree searched")->check(CLI::Range(1u, 64u));

    auto* pr = app.add_subcommand("predict", "Candidate stable-reduction types of a quartic");
    pr->add_option("--field", field, "p or p^k")->required();
    pr->add_option("--poly", poly, "Quartic form in x, y, z")->required();

    auto* va = app.add_subcommand("verify-appendix", "Check the tricuspidal quartic over a field");
    va->add_option("--field", field, "p or p^k")->required();

    auto* ty = app.add_subcommand("types", "The 42 genus-3 types");

    if (!args.empty() && !args.front().empty() && args.front().front() != '-' && !app.got_subcommand(args.front())) {
        bool known = false;
        for (const auto* sc : app.get_subcommands({})) known = known || sc->get_name() == args.front();
        if (!known) {
            err << "error: unknown command '" << args.front() << "'\n";
            return kExitInput;
        }
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        json result;
        if (*en)
            result = cmd_enumerate(genus, legs, count_only, unlabeled);
        else if (*cl)
            result = cmd_classify(graph_file);
        else if (*an)
            result = cmd_analyze(field, poly, depth);
        else if (*pr)
            result = cmd_predict(field, poly);
        else if (*va)
            result = cmd_verify(field);
        else if (*ty)
            result = cmd_types();
        emit(out, result);
        return kExitOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
}

}  // namespace qrl::cli
