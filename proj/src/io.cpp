#include "pcsp/io.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

namespace pcsp::io {

ParseError::ParseError(int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

/// Splits one physical line into tokens; `{`, `}` and `;` always stand
/// alone, `#` starts a comment.
std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::string current;
    const auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (c == '{' || c == '}' || c == ';') {
            flush();
            tokens.push_back(std::string(1, c));
        } else {
            current += c;
        }
    }
    flush();
    return tokens;
}

struct PendingConstraint {
    std::string id;
    Degree necessity;
    std::vector<std::string> scope;
    std::vector<const DomainVariable*> scope_vars;
    ConstraintMode mode = ConstraintMode::Forbid;
    std::set<std::vector<Label>> tuples;
    std::vector<Label> current;
    int start_line = 0;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Problem run() {
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            const std::size_t eol = text_.find('\n', pos);
            const std::size_t end = eol == std::string_view::npos ? text_.size() : eol;
            ++line_;
            handle_line(tokenize(text_.substr(pos, end - pos)));
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
        if (pending_) {
            throw ParseError(pending_->start_line,
                             "unterminated tuple block in constraint '" + pending_->id + "'");
        }
        if (!name_) throw ParseError(line_, "missing 'problem' line");
        return Problem(*name_, std::move(variables_), std::move(constraints_));
    }

private:
    void handle_line(const std::vector<std::string>& tokens) {
        std::size_t i = 0;
        if (pending_) {
            consume_block(tokens, i);
            if (pending_) return;
        }
        if (i >= tokens.size()) return;

        const std::string& head = tokens[i];
        if (head == "problem") {
            parse_problem_line(tokens, i);
        } else if (head == "var") {
            parse_var_line(tokens, i);
        } else if (head == "constraint") {
            parse_constraint_line(tokens, i);
        } else {
            throw ParseError(line_, "unknown directive '" + head + "'");
        }
    }

    void parse_problem_line(const std::vector<std::string>& tokens, std::size_t i) {
        if (name_) throw ParseError(line_, "duplicate 'problem' line");
        if (tokens.size() - i != 2 || !is_token(tokens[i + 1])) {
            throw ParseError(line_, "expected 'problem <name>'");
        }
        name_ = tokens[i + 1];
    }

    void parse_var_line(const std::vector<std::string>& tokens, std::size_t i) {
        require_header();
        if (tokens.size() - i < 4 || tokens[i + 2] != ":") {
            throw ParseError(line_, "expected 'var <name> : <label> ...'");
        }
        const std::string& name = tokens[i + 1];
        if (!is_token(name)) throw ParseError(line_, "bad variable name '" + name + "'");
        if (find_variable(name) != nullptr) {
            throw ParseError(line_, "duplicate variable '" + name + "'");
        }
        std::vector<Label> domain;
        for (std::size_t k = i + 3; k < tokens.size(); ++k) {
            if (!is_token(tokens[k])) {
                throw ParseError(line_, "bad label '" + tokens[k] + "'");
            }
            domain.emplace_back(tokens[k]);
        }
        std::set<Label> unique(domain.begin(), domain.end());
        if (unique.size() != domain.size()) {
            throw ParseError(line_, "variable '" + name + "' repeats a domain label");
        }
        variables_.emplace_back(name, std::move(domain));
    }

    void parse_constraint_line(const std::vector<std::string>& tokens, std::size_t i) {
        require_header();
        if (tokens.size() - i < 7) {
            throw ParseError(line_, "expected 'constraint <id> <necessity> on <var> ... "
                                    "<allow|forbid> { ... }'");
        }
        PendingConstraint pending;
        pending.start_line = line_;
        pending.id = tokens[i + 1];
        if (!is_token(pending.id)) {
            throw ParseError(line_, "bad constraint id '" + pending.id + "'");
        }
        if (constraint_ids_.count(pending.id) != 0) {
            throw ParseError(line_, "duplicate constraint id '" + pending.id + "'");
        }
        try {
            pending.necessity = Degree::parse(tokens[i + 2]);
        } catch (const Error& e) {
            throw ParseError(line_, e.what());
        }
        if (tokens[i + 3] != "on") {
            throw ParseError(line_, "expected 'on' after the necessity");
        }

        std::size_t k = i + 4;
        while (k < tokens.size() && tokens[k] != "allow" && tokens[k] != "forbid") {
            const std::string& var_name = tokens[k];
            const DomainVariable* var = find_variable(var_name);
            if (var == nullptr) {
                throw ParseError(line_, "unknown variable '" + var_name + "' in scope");
            }
            if (std::find(pending.scope.begin(), pending.scope.end(), var_name) !=
                pending.scope.end()) {
                throw ParseError(line_, "scope repeats variable '" + var_name + "'");
            }
            pending.scope.push_back(var_name);
            pending.scope_vars.push_back(var);
            ++k;
        }
        if (pending.scope.empty()) {
            throw ParseError(line_, "constraint scope is empty");
        }
        if (k >= tokens.size()) {
            throw ParseError(line_, "expected 'allow' or 'forbid' after the scope");
        }
        pending.mode = tokens[k] == "allow" ? ConstraintMode::Allow : ConstraintMode::Forbid;
        ++k;
        if (k >= tokens.size() || tokens[k] != "{") {
            throw ParseError(line_, "expected '{' to open the tuple block");
        }
        ++k;
        pending_ = std::move(pending);
        consume_block(tokens, k);
    }

    /// Eats tuple-block tokens until `}` or the end of the line.
    void consume_block(const std::vector<std::string>& tokens, std::size_t& i) {
        PendingConstraint& p = *pending_;
        for (; i < tokens.size(); ++i) {
            const std::string& t = tokens[i];
            if (t == "}") {
                if (!p.current.empty()) finish_tuple();
                constraints_.emplace_back(
                    p.id, Constraint(p.scope, std::move(p.tuples), p.mode), p.necessity);
                constraint_ids_.insert(p.id);
                pending_.reset();
                ++i;
                if (i < tokens.size()) {
                    throw ParseError(line_, "unexpected '" + tokens[i] + "' after '}'");
                }
                return;
            }
            if (t == ";") {
                if (p.current.empty()) {
                    throw ParseError(line_, "empty tuple in constraint '" + p.id + "'");
                }
                finish_tuple();
                continue;
            }
            if (p.current.size() == p.scope.size()) {
                throw ParseError(line_, "tuple in constraint '" + p.id + "' has more than " +
                                            std::to_string(p.scope.size()) + " labels");
            }
            const DomainVariable* var = p.scope_vars[p.current.size()];
            Label label = [&] {
                try {
                    return Label(t);
                } catch (const Error& e) {
                    throw ParseError(line_, e.what());
                }
            }();
            if (!var->contains(label)) {
                throw ParseError(line_, "label '" + t + "' is outside the domain of '" +
                                            var->name() + "'");
            }
            p.current.push_back(std::move(label));
        }
    }

    void finish_tuple() {
        PendingConstraint& p = *pending_;
        if (p.current.size() != p.scope.size()) {
            throw ParseError(line_, "tuple in constraint '" + p.id + "' has " +
                                        std::to_string(p.current.size()) + " labels, scope has " +
                                        std::to_string(p.scope.size()));
        }
        p.tuples.insert(std::move(p.current));
        p.current.clear();
    }

    void require_header() const {
        if (!name_) throw ParseError(line_, "expected the 'problem' line first");
    }

    const DomainVariable* find_variable(const std::string& name) const {
        for (const auto& var : variables_) {
            if (var.name() == name) return &var;
        }
        return nullptr;
    }

    std::string_view text_;
    int line_ = 0;
    std::optional<std::string> name_;
    std::vector<DomainVariable> variables_;
    std::vector<ValuedConstraint> constraints_;
    std::set<std::string> constraint_ids_;
    std::optional<PendingConstraint> pending_;
};

} // namespace

Problem parse_problem(std::string_view text) { return Parser(text).run(); }

std::string write_problem(const Problem& problem) {
    std::ostringstream out;
    out << "problem " << problem.name() << "\n";
    if (!problem.variables().empty()) out << "\n";
    for (const auto& var : problem.variables()) {
        out << "var " << var.name() << " :";
        for (const auto& label : var.domain()) out << " " << label.text();
        out << "\n";
    }
    if (!problem.constraints().empty()) out << "\n";
    for (const auto& vc : problem.constraints()) {
        const Constraint& k = vc.constraint();
        out << "constraint " << vc.id() << " " << vc.necessity().str() << " on";
        for (const auto& name : k.scope()) out << " " << name;
        out << (k.mode() == ConstraintMode::Allow ? " allow " : " forbid ");
        if (k.tuples().empty()) {
            out << "{}";
        } else {
            out << "{";
            bool first = true;
            for (const auto& tuple : k.tuples()) {
                if (!first) out << " ;";
                first = false;
                for (const auto& label : tuple) out << " " << label.text();
            }
            out << " }";
        }
        out << "\n";
    }
    return out.str();
}

namespace {

Degree deg(const char* text) { return Degree::parse(text); }

ValuedConstraint table_constraint(const char* id, const char* necessity,
                                  std::vector<std::string> scope, ConstraintMode mode,
                                  std::vector<std::vector<const char*>> rows) {
    std::set<std::vector<Label>> tuples;
    for (const auto& row : rows) {
        std::vector<Label> tuple;
        for (const char* text : row) tuple.emplace_back(text);
        tuples.insert(std::move(tuple));
    }
    return ValuedConstraint(id, Constraint(std::move(scope), std::move(tuples), mode),
                            deg(necessity));
}

} // namespace

Problem builtin_menu() {
    std::vector<DomainVariable> variables;
    variables.emplace_back("drink", std::vector<Label>{Label("white-wine"), Label("red-wine"),
                                                       Label("beer"), Label("water")});
    variables.emplace_back("entrance",
                           std::vector<Label>{Label("smoked-salmon"), Label("caviar"),
                                              Label("foie-gras"), Label("oysters"),
                                              Label("none")});
    variables.emplace_back("dish",
                           std::vector<Label>{Label("fish"), Label("boar"), Label("sauerkraut")});
    variables.emplace_back("dessert",
                           std::vector<Label>{Label("apple-pie"), Label("strawberry-ice"),
                                              Label("fruit"), Label("none")});

    const auto forbid = ConstraintMode::Forbid;
    const auto allow = ConstraintMode::Allow;
    std::vector<ValuedConstraint> constraints;
    // sauerkraut calls for beer / white wine / plain water
    constraints.push_back(table_constraint("a", "0.8", {"dish", "drink"}, forbid,
                                           {{"sauerkraut", "white-wine"},
                                            {"sauerkraut", "red-wine"},
                                            {"sauerkraut", "water"}}));
    constraints.push_back(table_constraint("b", "0.3", {"dish", "drink"}, forbid,
                                           {{"sauerkraut", "red-wine"},
                                            {"sauerkraut", "beer"},
                                            {"sauerkraut", "water"}}));
    constraints.push_back(table_constraint("c", "0.2", {"dish", "drink"}, forbid,
                                           {{"sauerkraut", "white-wine"},
                                            {"sauerkraut", "red-wine"},
                                            {"sauerkraut", "beer"}}));
    // no fish entrance before a fish dish
    constraints.push_back(table_constraint("d", "0.7", {"entrance", "dish"}, forbid,
                                           {{"smoked-salmon", "fish"},
                                            {"caviar", "fish"},
                                            {"oysters", "fish"}}));
    // fish calls for white wine / plain water; boar calls for red wine
    constraints.push_back(table_constraint("e", "0.9", {"dish", "drink"}, forbid,
                                           {{"fish", "red-wine"},
                                            {"fish", "beer"},
                                            {"fish", "water"}}));
    constraints.push_back(table_constraint("f", "0.2", {"dish", "drink"}, forbid,
                                           {{"fish", "white-wine"},
                                            {"fish", "red-wine"},
                                            {"fish", "beer"}}));
    constraints.push_back(table_constraint("g", "0.9", {"dish", "drink"}, forbid,
                                           {{"boar", "white-wine"},
                                            {"boar", "beer"},
                                            {"boar", "water"}}));
    // foie gras calls for white wine
    constraints.push_back(table_constraint("h", "0.9", {"entrance", "drink"}, forbid,
                                           {{"foie-gras", "red-wine"},
                                            {"foie-gras", "beer"},
                                            {"foie-gras", "water"}}));
    // ice cream after boar
    constraints.push_back(table_constraint("i", "0.5", {"dish", "dessert"}, forbid,
                                           {{"boar", "apple-pie"},
                                            {"boar", "fruit"},
                                            {"boar", "none"}}));
    // a full meal has an entrance and a dessert (j), at least one of them (k)
    constraints.push_back(table_constraint("j", "0.4", {"entrance", "dessert"}, forbid,
                                           {{"none", "apple-pie"},
                                            {"none", "strawberry-ice"},
                                            {"none", "fruit"},
                                            {"none", "none"},
                                            {"smoked-salmon", "none"},
                                            {"caviar", "none"},
                                            {"foie-gras", "none"},
                                            {"oysters", "none"}}));
    constraints.push_back(table_constraint("k", "0.6", {"entrance", "dessert"}, forbid,
                                           {{"none", "none"}}));
    // no water if avoidable; oysters are out of season
    constraints.push_back(table_constraint("l", "0.5", {"drink"}, forbid, {{"water"}}));
    constraints.push_back(table_constraint("m", "1", {"entrance"}, forbid, {{"oysters"}}));
    // some fish course: either the dish or a fish entrance
    constraints.push_back(table_constraint("n", "0.8", {"entrance", "dish"}, forbid,
                                           {{"foie-gras", "boar"},
                                            {"foie-gras", "sauerkraut"},
                                            {"none", "boar"},
                                            {"none", "sauerkraut"}}));
    // the chef would love to serve sauerkraut
    constraints.push_back(table_constraint("o", "0.2", {"dish"}, allow, {{"sauerkraut"}}));

    return Problem("menu", std::move(variables), std::move(constraints));
}

Problem random_problem(const GeneratorSpec& spec) {
    if (spec.n_vars < 1 || spec.domain_size < 1 || spec.max_arity < 1) {
        throw Error("generator sizes must be positive");
    }
    if (spec.n_constraints < 0) throw Error("negative constraint count");
    if (spec.max_arity > spec.n_vars) {
        throw Error("max_arity " + std::to_string(spec.max_arity) + " exceeds " +
                    std::to_string(spec.n_vars) + " variables");
    }
    if (!(spec.tightness >= 0.0 && spec.tightness <= 1.0)) {
        throw Error("tightness must lie in [0, 1]");
    }
    if (spec.necessity_levels.empty()) throw Error("no necessity levels");
    for (Degree level : spec.necessity_levels) {
        if (level == Degree::zero()) throw Error("necessity levels must be positive");
    }

    std::mt19937_64 rng(spec.seed);
    // Explicit modulo draws keep the stream identical across platforms.
    const auto below = [&rng](std::uint64_t n) { return rng() % n; };

    std::vector<Label> labels;
    for (int v = 0; v < spec.domain_size; ++v) labels.emplace_back("d" + std::to_string(v));
    std::vector<DomainVariable> variables;
    for (int v = 0; v < spec.n_vars; ++v) {
        variables.emplace_back("x" + std::to_string(v), labels);
    }

    std::vector<ValuedConstraint> constraints;
    for (int c = 0; c < spec.n_constraints; ++c) {
        const int arity = 1 + static_cast<int>(below(spec.max_arity));

        std::vector<int> indices(spec.n_vars);
        for (int v = 0; v < spec.n_vars; ++v) indices[v] = v;
        for (int v = 0; v < arity; ++v) {
            std::swap(indices[v], indices[v + below(spec.n_vars - v)]);
        }
        std::vector<int> chosen(indices.begin(), indices.begin() + arity);
        std::sort(chosen.begin(), chosen.end());
        std::vector<std::string> scope;
        for (int v : chosen) scope.push_back(variables[v].name());

        std::uint64_t cross = 1;
        for (int v = 0; v < arity; ++v) cross *= spec.domain_size;
        if (cross > 1'000'000) throw Error("constraint cross-product too large");

        std::vector<std::vector<Label>> pool;
        std::vector<std::size_t> odo(arity, 0);
        while (true) {
            std::vector<Label> tuple;
            for (int v = 0; v < arity; ++v) tuple.push_back(labels[odo[v]]);
            pool.push_back(std::move(tuple));
            int pos = arity;
            while (pos > 0) {
                --pos;
                if (++odo[pos] < labels.size()) break;
                odo[pos] = 0;
                if (pos == 0) goto pool_done;
            }
        }
    pool_done:
        const auto count = static_cast<std::size_t>(
            std::llround(spec.tightness * static_cast<double>(cross)));
        std::set<std::vector<Label>> forbidden;
        for (std::size_t v = 0; v < count; ++v) {
            std::swap(pool[v], pool[v + below(pool.size() - v)]);
            forbidden.insert(pool[v]);
        }

        const Degree necessity =
            spec.necessity_levels[below(spec.necessity_levels.size())];
        constraints.emplace_back("c" + std::to_string(c),
                                 Constraint(std::move(scope), std::move(forbidden),
                                            ConstraintMode::Forbid),
                                 necessity);
    }

    return Problem("random-" + std::to_string(spec.seed), std::move(variables),
                   std::move(constraints));
}

} // namespace pcsp::io
