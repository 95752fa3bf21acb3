#include "dessins/cli/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dessins/census/census.hpp"
#include "dessins/census/store.hpp"
#include "dessins/errors.hpp"
#include "dessins/genfun/genfun.hpp"
#include "dessins/permoracle/oracle.hpp"
#include "dessins/specrec/specrec.hpp"
#include "dessins/toprec/toprec.hpp"

namespace dessins::cli {
namespace {

using nlohmann::ordered_json;

struct UsageError : Error {
    using Error::Error;
};

struct Options {
    std::optional<std::string> cache;
    unsigned threads = 0;
    std::string format = "json";

    // count
    std::string method = "recursion";
    int k = 1, l = 1, genus = 0;
    std::vector<int> mu;

    // verify
    std::string model = "dessin";
    int max_weight = 8;
    std::optional<int> max_n;
    std::vector<std::string> cells;

    // table
    int max_degree = 5;
    std::string kind = "f";
    int max_index = 8;
    int g = 0, m = 1;
    std::string form = "both";
};

Model parse_model(const std::string& name) {
    if (name == "dessin") return Model::dessin;
    if (name == "ribbon") return Model::ribbon;
    throw UsageError("unknown model '" + name + "'");
}

Partition checked_mu(const std::vector<int>& mu) {
    if (mu.empty()) throw UsageError("--mu needs at least one part");
    for (int p : mu)
        if (p < 1) throw UsageError("parts of --mu must be positive");
    return Partition(mu.begin(), mu.end());
}

oracle::Config oracle_config(const Options& o) {
    oracle::Config cfg;
    cfg.threads = o.threads;
    return cfg;
}

/// Emits one record as a JSON line or as "key=value" text.
void emit(std::ostream& out, const Options& o, const ordered_json& j) {
    if (o.format == "text") {
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out << ' ';
            first = false;
            out << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
        }
        out << '\n';
    } else {
        out << j.dump() << '\n';
    }
}

int cmd_count_dessin(const Options& o, Store& store, std::ostream& out) {
    const DessinClass c{o.k, o.l, checked_mu(o.mu)};
    if (o.k < 1 || o.l < 1) throw UsageError("--k and --l must be positive");
    ordered_json j;
    j["class"] = {{"k", c.k}, {"l", c.l}, {"mu", c.mu}};
    const auto genus = c.genus();
    j["genus"] = genus ? ordered_json(*genus) : ordered_json(nullptr);
    j["degree"] = c.degree();
    int code = ok;
    if (o.method == "recursion") {
        j["value"] = to_string(dessin_count(c, store));
    } else if (o.method == "oracle") {
        j["value"] = to_string(oracle::dessin_count_oracle(c, oracle_config(o)));
    } else {
        const Rational rec = dessin_count(c, store);
        const Rational orc = oracle::dessin_count_oracle(c, oracle_config(o));
        j["value"] = to_string(rec);
        j["oracle"] = to_string(orc);
        j["agree"] = rec == orc;
        if (rec != orc) code = verification_failed;
    }
    j["method"] = o.method;
    emit(out, o, j);
    return code;
}

int cmd_count_ribbon(const Options& o, Store& store, std::ostream& out) {
    const RibbonClass c{o.genus, checked_mu(o.mu)};
    if (o.genus < 0) throw UsageError("--genus must be non-negative");
    ordered_json j;
    j["class"] = {{"g", c.g}, {"mu", c.mu}};
    j["genus"] = c.g;
    j["degree"] = c.degree();
    int code = ok;
    if (o.method == "recursion") {
        j["value"] = to_string(ribbon_count(c, store));
    } else if (o.method == "oracle") {
        j["value"] = to_string(oracle::ribbon_count_oracle(c, oracle_config(o)));
    } else {
        const Rational rec = ribbon_count(c, store);
        const Rational orc = oracle::ribbon_count_oracle(c, oracle_config(o));
        j["value"] = to_string(rec);
        j["oracle"] = to_string(orc);
        j["agree"] = rec == orc;
        if (rec != orc) code = verification_failed;
    }
    j["method"] = o.method;
    emit(out, o, j);
    return code;
}

int report_all(std::ostream& out, const std::vector<CheckReport>& reports) {
    for (const auto& r : reports) out << r.to_json().dump() << '\n';
    return all_zero(reports) ? ok : verification_failed;
}

std::pair<int, int> parse_cell(const std::string& cell) {
    const auto comma = cell.find(',');
    if (comma == std::string::npos) throw UsageError("cell '" + cell + "' is not of the form g,m");
    try {
        std::size_t p1 = 0, p2 = 0;
        const int g = std::stoi(cell.substr(0, comma), &p1);
        const int m = std::stoi(cell.substr(comma + 1), &p2);
        if (p1 != comma || p2 != cell.size() - comma - 1) throw std::invalid_argument("trailing");
        if (!toprec_detail::stable(g, m)) throw UsageError("cell " + cell + " is not stable");
        return {g, m};
    } catch (const std::logic_error&) {
        throw UsageError("cell '" + cell + "' is not of the form g,m");
    }
}

int cmd_verify(const std::string& suite, const Options& o, Store& store, std::ostream& out) {
    const Model model = parse_model(o.model);
    const int w = o.max_weight;
    if (w < 0) throw UsageError("--max-weight must be non-negative");
    const ordered_json base = {{"model", o.model}, {"maxWeight", w}};
    std::vector<CheckReport> reports;
    if (suite == "virasoro") {
        const int top = o.max_n.value_or(model == Model::dessin ? 6 : 5);
        const int low = model == Model::dessin ? 0 : -1;
        if (top < low) throw UsageError("--max-n below the first operator");
        const GenSeries F = assemble_F(model, w + top + (model == Model::dessin ? 1 : 2), store);
        for (int n = low; n <= top; ++n) {
            ordered_json p = base;
            p["n"] = n;
            reports.push_back(series_report("virasoro", p,
                                            model == Model::dessin ? virasoro_residual(F, n, w)
                                                                   : virasoro_residual_ribbon(F, n, w)));
        }
    } else if (suite == "kp") {
        const GenSeries F = assemble_F(model, w + 6, store);
        const auto r = kp_residuals(F, w);
        for (std::size_t i = 0; i < r.size(); ++i) {
            ordered_json p = base;
            p["equation"] = i + 1;
            reports.push_back(series_report("kp", p, r[i]));
        }
    } else if (suite == "evolution") {
        reports.push_back(series_report("evolution", base, evolution_build(model, w) - assemble_F(model, w, store)));
    } else if (suite == "quantum-curve") {
        const TSeries r = quantum_curve_residual_of(assemble_F(model, w + 2, store));
        reports.push_back(series_report("quantum-curve", base, r, w));
    } else if (suite == "theta-lemma") {
        reports = theta_lemma_report(assemble_F(model, w + 4, store), w);
    } else if (suite == "toprec") {
        std::vector<std::string> cells = o.cells;
        if (cells.empty()) cells = {"0,3", "1,1", "0,4", "1,2", "2,1", "1,3"};
        const GenSeries F = assemble_F(model, w, store);
        for (const auto& cell : cells) {
            const auto [g, m] = parse_cell(cell);
            ordered_json p = base;
            p["g"] = g;
            p["m"] = m;
            const GenSeries diff = substitute_T(toprec_G(model, g, m), w) - homogeneous_component(F, g, m);
            reports.push_back(series_report("toprec", p, diff));
        }
    } else if (suite == "unstable") {
        reports = verify_unstable(model, w, store);
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }
    return report_all(out, reports);
}

void csv_or_json(std::ostream& out, const Options& o, const std::vector<std::string>& csv_fields,
                 const ordered_json& j) {
    if (o.format == "csv") {
        for (std::size_t i = 0; i < csv_fields.size(); ++i) out << (i ? "," : "") << csv_fields[i];
        out << '\n';
    } else {
        emit(out, o, j);
    }
}

int cmd_table_dessin(const Options& o, Store& store, std::ostream& out) {
    if (o.max_degree < 1) throw UsageError("--max-degree must be positive");
    std::map<DessinClass, Rational> rows;
    for (int d = 1; d <= o.max_degree; ++d)
        for (const auto& mu : partitions_of(d))
            for (int k = 1; k <= d + 1; ++k)
                for (int l = 1; k + l + static_cast<int>(mu.size()) <= d + 2; ++l) {
                    const DessinClass c{k, l, mu};
                    if (c.genus()) rows.emplace(c, dessin_count(c, store));
                }
    if (o.format == "csv") out << "k,l,mu,genus,value\n";
    for (const auto& [c, v] : rows)
        csv_or_json(out, o,
                    {std::to_string(c.k), std::to_string(c.l), partition_str(c.mu), std::to_string(*c.genus()),
                     to_string(v)},
                    {{"k", c.k}, {"l", c.l}, {"mu", c.mu}, {"genus", *c.genus()}, {"value", to_string(v)}});
    return ok;
}

int cmd_table_ribbon(const Options& o, Store& store, std::ostream& out) {
    if (o.max_degree < 1) throw UsageError("--max-degree must be positive");
    std::map<RibbonClass, Rational> rows;
    for (int d = 2; d <= o.max_degree; d += 2)
        for (const auto& mu : partitions_of(d))
            for (int g = 0;; ++g) {
                const RibbonClass c{g, mu};
                if (!c.vertices()) break;
                rows.emplace(c, ribbon_count(c, store));
            }
    if (o.format == "csv") out << "g,mu,vertices,value\n";
    for (const auto& [c, v] : rows)
        csv_or_json(out, o,
                    {std::to_string(c.g), partition_str(c.mu), std::to_string(*c.vertices()), to_string(v)},
                    {{"g", c.g}, {"mu", c.mu}, {"vertices", *c.vertices()}, {"value", to_string(v)}});
    return ok;
}

int cmd_table_spec(const Options& o, Store& store, std::ostream& out) {
    const auto kind = spec_kind_from(o.kind);
    if (!kind) throw UsageError("unknown --kind '" + o.kind + "'");
    if (o.max_index < 0) throw UsageError("--max must be non-negative");
    const bool by_degree = *kind == SpecKind::f || *kind == SpecKind::h;
    const char* index = by_degree ? "d" : "l";
    if (o.format == "csv") out << "g," << index << ",polynomial\n";
    for (int g = 0;; ++g) {
        const int first = by_degree ? 2 * g + 1 : 2 * g;
        if (first > o.max_index) break;
        for (int n = first; n <= o.max_index; ++n) {
            const SpecPoly s = spec_poly(*kind, g, n, store);
            csv_or_json(out, o, {std::to_string(g), std::to_string(n), s.poly.str()},
                        {{"kind", o.kind}, {"g", g}, {index, n}, {"polynomial", s.poly.str()}});
        }
    }
    return ok;
}

int cmd_table_toprec(const Options& o, std::ostream& out) {
    const Model model = parse_model(o.model);
    if (!toprec_detail::stable(o.g, o.m)) throw UsageError("(g,m) must satisfy 2g-2+m > 0");
    if (o.form != "U" && o.form != "G" && o.form != "both") throw UsageError("--form must be U, G or both");
    const std::string cell = "[" + std::to_string(o.g) + "," + std::to_string(o.m) + "]";
    if (o.form != "G") out << toprec_U(model, o.g, o.m).str("U" + cell) << '\n';
    if (o.form != "U") out << toprec_G(model, o.g, o.m).str("G" + cell) << '\n';
    return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    std::function<int(Store&)> action;

    CLI::App app{"Exact enumeration of dessins and ribbon graphs"};
    app.require_subcommand(1);
    app.add_option("--cache", o.cache, "Census cache file (JSON lines); DESSIN_CACHE overrides");
    app.add_option("--threads", o.threads, "Worker cap for oracle sweeps (0 = all cores)");

    const auto formats = CLI::IsMember({"json", "csv", "text"});

    auto* count = app.add_subcommand("count", "Count one class");
    count->require_subcommand(1);
    auto* count_d = count->add_subcommand("dessin", "N_{k,l}(mu)");
    auto* count_r = count->add_subcommand("ribbon", "D_{g,m}(mu)");
    for (auto* c : {count_d, count_r}) {
        c->add_option("--mu", o.mu, "Boundary lengths")->required()->delimiter(',');
        c->add_option("--method", o.method)->check(CLI::IsMember({"recursion", "oracle", "both"}));
        c->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
        c->add_option("--threads", o.threads);
    }
    count_d->add_option("--k", o.k)->required();
    count_d->add_option("--l", o.l)->required();
    count_r->add_option("--genus,--g", o.genus)->required();
    count_d->callback([&] { action = [&](Store& s) { return cmd_count_dessin(o, s, out); }; });
    count_r->callback([&] { action = [&](Store& s) { return cmd_count_ribbon(o, s, out); }; });

    auto* verify = app.add_subcommand("verify", "Run an exact verification suite");
    verify->require_subcommand(1);
    for (const char* suite : {"virasoro", "kp", "evolution", "quantum-curve", "theta-lemma", "toprec", "unstable"}) {
        auto* s = verify->add_subcommand(suite);
        s->add_option("--model", o.model)->check(CLI::IsMember({"dessin", "ribbon"}));
        s->add_option("--max-weight,--max-degree,--max-order", o.max_weight);
        if (std::string(suite) == "virasoro") s->add_option("--max-n", o.max_n);
        if (std::string(suite) == "toprec") s->add_option("--cells", o.cells, "Cells g,m");
        const std::string name = suite;
        s->callback([&, name] { action = [&, name](Store& st) { return cmd_verify(name, o, st, out); }; });
    }

    auto* table = app.add_subcommand("table", "Export tables");
    table->require_subcommand(1);
    auto* table_d = table->add_subcommand("dessin");
    auto* table_r = table->add_subcommand("ribbon");
    auto* table_s = table->add_subcommand("spec");
    auto* table_t = table->add_subcommand("toprec");
    for (auto* t : {table_d, table_r, table_s}) t->add_option("--format", o.format)->check(formats);
    for (auto* t : {table_d, table_r}) t->add_option("--max-degree", o.max_degree);
    table_s->add_option("--kind", o.kind)->check(CLI::IsMember({"f", "h", "ftilde", "eps"}));
    table_s->add_option("--max,--max-d,--max-l", o.max_index);
    table_t->add_option("--model", o.model)->check(CLI::IsMember({"dessin", "ribbon"}));
    table_t->add_option("--g", o.g);
    table_t->add_option("--m", o.m);
    table_t->add_option("--form", o.form)->check(CLI::IsMember({"U", "G", "both"}));
    table_d->callback([&] { action = [&](Store& s) { return cmd_table_dessin(o, s, out); }; });
    table_r->callback([&] { action = [&](Store& s) { return cmd_table_ribbon(o, s, out); }; });
    table_s->callback([&] { action = [&](Store& s) { return cmd_table_spec(o, s, out); }; });
    table_t->callback([&] { action = [&](Store&) { return cmd_table_toprec(o, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    Store store;
    try {
        const auto path = resolve_cache_path(o.cache);
        if (path) store.load_file(*path);
        const int code = action(store);
        if (path) store.save_file(*path);
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const CacheIOError& e) {
        err << "cache error: " << e.what() << '\n';
        return io;
    } catch (const TruncationError& e) {
        err << "truncation error: " << e.what() << '\n';
        return resource;
    } catch (const LimitExceeded& e) {
        err << "limit exceeded: " << e.what() << '\n';
        return resource;
    } catch (const IdentityViolation& e) {
        err << "identity violation: " << e.what() << '\n';
        return verification_failed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return verification_failed;
    }
}

}  // namespace dessins::cli
