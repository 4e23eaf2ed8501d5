#include "psys/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

namespace psys {

std::string to_string(const SourceDiagnostic& d) {
    return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.code + ": " +
           d.message;
}

namespace {

constexpr int kMaxRegions = 100'000;

bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

/// Byte cursor over one line; columns are 1-based.
class Cursor {
public:
    Cursor(std::string_view line, std::size_t start) : s_(line), i_(start) {}

    void ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r')) ++i_;
    }
    bool eof() {
        ws();
        return i_ >= s_.size();
    }
    char peek() {
        ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    bool eat(std::string_view tok) {
        ws();
        if (s_.substr(i_, tok.size()) != tok) return false;
        i_ += tok.size();
        return true;
    }
    std::string_view ident() {
        ws();
        std::size_t j = i_;
        while (j < s_.size() && ident_char(s_[j])) ++j;
        auto out = s_.substr(i_, j - i_);
        i_ = j;
        return out;
    }
    /// Raw text up to (not including) the first of `stops`.
    std::string_view until(std::string_view stops) {
        std::size_t j = i_;
        while (j < s_.size() && stops.find(s_[j]) == std::string_view::npos) ++j;
        auto out = s_.substr(i_, j - i_);
        i_ = j;
        return out;
    }
    std::optional<int> integer() {
        auto tok = ident();
        int v = 0;
        if (tok.empty()) return std::nullopt;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
        return v;
    }
    int column() const { return static_cast<int>(i_) + 1; }
    std::size_t pos() const { return i_; }
    std::string_view rest() const { return s_.substr(std::min(i_, s_.size())); }

private:
    std::string_view s_;
    std::size_t i_;
};

struct Ref {
    int line;
    int column;
};

enum class Model { Cell, Tissue, Interaction };

struct SyntaxError {
    int column;
    std::string message;
    std::string code;
};

/**
 * Shared state while reading one document. Object and label references are
 * recorded with their positions and resolved once every directive is known,
 * so directive order (after @model) does not matter.
 */
class Reader {
public:
    std::vector<SourceDiagnostic> diags;

    void error(int line, int col, std::string msg, std::string code) {
        diags.push_back({line, col, std::move(msg), std::move(code)});
    }

    void mention(const Multiset& m, int line, int col) {
        for (const auto& [a, n] : m) objects_.push_back({a, {line, col}});
    }
    void mention(const ObjectId& a, int line, int col) { objects_.push_back({a, {line, col}}); }
    void label(Label l, bool allow_env, int line, int col) {
        labels_.push_back({l, allow_env, {line, col}});
    }

    void resolve(const std::set<ObjectId>& alphabet, int degree) {
        for (const auto& [a, ref] : objects_)
            if (!alphabet.count(a))
                error(ref.line, ref.column, "undeclared object '" + a + "'", "P003");
        for (const auto& l : labels_) {
            const int lo = l.allow_env ? 0 : 1;
            if (l.label < lo || l.label > degree)
                error(l.ref.line, l.ref.column,
                      "label " + std::to_string(l.label) + " out of range " + std::to_string(lo) +
                          ".." + std::to_string(degree),
                      "P004");
        }
    }

private:
    struct LabelRef {
        Label label;
        bool allow_env;
        Ref ref;
    };
    std::vector<std::pair<ObjectId, Ref>> objects_;
    std::vector<LabelRef> labels_;
};

/// Multiset text between the cursor and the first stop character.
std::optional<Multiset> read_multiset(Cursor& cur, std::string_view stops, int& err_col,
                                      std::string& err, std::string& code) {
    cur.ws();
    const std::size_t start = cur.pos();
    std::string_view raw = cur.until(stops);
    while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
        raw.remove_suffix(1);
    auto [m, e] = parse_multiset(raw);
    if (!m) {
        err_col = static_cast<int>(start + e->offset) + 1;
        err = e->message;
        code = e->message.find("zero multiplicity") != std::string::npos ? "P008" : "P002";
        return std::nullopt;
    }
    return m;
}

std::optional<CellRule> read_cell_rule(Cursor& cur, Label region, std::optional<SyntaxError>& err) {
    auto fail = [&](int col, std::string msg, std::string code = "P007") {
        err = SyntaxError{col, std::move(msg), std::move(code)};
        return std::nullopt;
    };
    if (!cur.eat('(')) return fail(cur.column(), "expected '(' to start a rule");
    int ecol = 0;
    std::string emsg, ecode;
    auto first = read_multiset(cur, ",;)", ecol, emsg, ecode);
    if (!first) return fail(ecol, emsg, ecode);
    if (!cur.eat(',')) return fail(cur.column(), "expected ','");
    const int dir_col = cur.column();
    const auto dir = cur.ident();
    if (dir == "in") {
        if (!cur.eat(')')) return fail(cur.column(), "expected ')'");
        return CellRule::symport_in(region, std::move(*first));
    }
    if (dir != "out") return fail(dir_col, "expected 'in' or 'out'");
    if (cur.eat(')')) return CellRule::symport_out(region, std::move(*first));
    if (!cur.eat(';')) return fail(cur.column(), "expected ')' or ';'");
    auto second = read_multiset(cur, ",;)", ecol, emsg, ecode);
    if (!second) return fail(ecol, emsg, ecode);
    if (!cur.eat(',')) return fail(cur.column(), "expected ','");
    const int in_col = cur.column();
    if (cur.ident() != "in") return fail(in_col, "expected 'in'");
    if (!cur.eat(')')) return fail(cur.column(), "expected ')'");
    return CellRule::antiport(region, std::move(*first), std::move(*second));
}

std::optional<TissueRule> read_tissue_rule(Cursor& cur, std::optional<SyntaxError>& err,
                                           std::vector<std::pair<Label, int>>& node_cols) {
    auto fail = [&](int col, std::string msg, std::string code = "P007") {
        err = SyntaxError{col, std::move(msg), std::move(code)};
        return std::nullopt;
    };
    if (!cur.eat('(')) return fail(cur.column(), "expected '(' to start a rule");
    cur.ws();
    const int from_col = cur.column();
    auto from = cur.integer();
    if (!from) return fail(from_col, "expected a node number");
    if (!cur.eat(',')) return fail(cur.column(), "expected ','");
    int ecol = 0;
    std::string emsg, ecode;
    auto x = read_multiset(cur, ",/)", ecol, emsg, ecode);
    if (!x) return fail(ecol, emsg, ecode);
    std::optional<Multiset> y;
    if (cur.eat('/')) {
        y = read_multiset(cur, ",/)", ecol, emsg, ecode);
        if (!y) return fail(ecol, emsg, ecode);
    }
    if (!cur.eat(',')) return fail(cur.column(), "expected ','");
    cur.ws();
    const int to_col = cur.column();
    auto to = cur.integer();
    if (!to) return fail(to_col, "expected a node number");
    if (!cur.eat(')')) return fail(cur.column(), "expected ')'");
    node_cols.emplace_back(*from, from_col);
    node_cols.emplace_back(*to, to_col);
    if (y) return TissueRule::antiport(*from, std::move(*x), std::move(*y), *to);
    return TissueRule::symport(*from, std::move(*x), *to);
}

struct Placed {
    ObjectId obj;
    Label node;
    int obj_col;
    int node_col;
};

std::optional<Placed> read_placed(Cursor& cur, std::optional<SyntaxError>& err) {
    if (!cur.eat('(')) {
        err = SyntaxError{cur.column(), "expected '('", "P007"};
        return std::nullopt;
    }
    cur.ws();
    const int obj_col = cur.column();
    const auto name = cur.ident();
    if (!is_object_name(name)) {
        err = SyntaxError{obj_col, "expected an object name", "P007"};
        return std::nullopt;
    }
    if (!cur.eat(',')) {
        err = SyntaxError{cur.column(), "expected ','", "P007"};
        return std::nullopt;
    }
    cur.ws();
    const int node_col = cur.column();
    auto node = cur.integer();
    if (!node) {
        err = SyntaxError{node_col, "expected a node number", "P007"};
        return std::nullopt;
    }
    if (!cur.eat(')')) {
        err = SyntaxError{cur.column(), "expected ')'", "P007"};
        return std::nullopt;
    }
    return Placed{std::string(name), *node, obj_col, node_col};
}

/// `(a,i)(b,j) -> (a,k)(b,l)` or `(a,i) -> (a,k)`.
std::optional<MinimalRule> read_minimal_rule(Cursor& cur, std::optional<SyntaxError>& err,
                                             std::vector<Placed>& placed) {
    const int start_col = [&] { cur.ws(); return cur.column(); }();
    std::vector<Placed> lhs, rhs;
    while (cur.peek() == '(') {
        auto p = read_placed(cur, err);
        if (!p) return std::nullopt;
        lhs.push_back(*p);
    }
    if (!cur.eat("->")) {
        err = SyntaxError{cur.column(), "expected '->'", "P007"};
        return std::nullopt;
    }
    while (rhs.size() < lhs.size() && cur.peek() == '(') {
        auto p = read_placed(cur, err);
        if (!p) return std::nullopt;
        rhs.push_back(*p);
    }
    if (lhs.empty() || lhs.size() > 2 || rhs.size() != lhs.size()) {
        err = SyntaxError{start_col, "arity mismatch: expected (a,i) -> (a,k) or (a,i)(b,j) -> (a,k)(b,l)",
                          "P007"};
        return std::nullopt;
    }
    for (std::size_t n = 0; n < lhs.size(); ++n)
        if (lhs[n].obj != rhs[n].obj) {
            err = SyntaxError{rhs[n].obj_col, "object '" + rhs[n].obj + "' does not match '" +
                                                  lhs[n].obj + "' on the left",
                              "P007"};
            return std::nullopt;
        }
    placed.insert(placed.end(), lhs.begin(), lhs.end());
    placed.insert(placed.end(), rhs.begin(), rhs.end());
    if (lhs.size() == 1) return UniportRule{lhs[0].obj, lhs[0].node, rhs[0].node};
    return InteractionRule{lhs[0].obj, lhs[0].node, lhs[1].obj, lhs[1].node, rhs[0].node,
                           rhs[1].node};
}

/// Splits text into lines with comments stripped; calls fn(line_no, line).
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        fn(line_no, line);
    }
}

/// Iterative parse of `1(2 3(4))` into a parent vector.
std::optional<std::vector<Label>> read_structure(std::string_view s, std::size_t offset,
                                                 std::optional<SyntaxError>& err) {
    std::map<Label, Label> parent;
    std::vector<Label> stack;
    std::optional<Label> last;
    int roots = 0;
    std::size_t i = 0;
    auto fail = [&](std::size_t at, std::string msg, std::string code) {
        err = SyntaxError{static_cast<int>(offset + at) + 1, std::move(msg), std::move(code)};
        return std::nullopt;
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c >= '0' && c <= '9') {
            std::size_t j = i;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            Label l = 0;
            auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, l);
            if (ec != std::errc{} || l < 1 || l > kMaxRegions)
                return fail(i, "membrane label out of range", "P004");
            if (stack.empty() && ++roots > 1)
                return fail(i, "only one skin membrane is allowed", "P004");
            if (!parent.emplace(l, stack.empty() ? 0 : stack.back()).second)
                return fail(i, "membrane label " + std::to_string(l) + " used twice", "P004");
            last = l;
            i = j;
        } else if (c == '(') {
            if (!last) return fail(i, "'(' must follow a membrane label", "P007");
            stack.push_back(*last);
            last.reset();
            ++i;
        } else if (c == ')') {
            if (stack.empty()) return fail(i, "unbalanced ')'", "P007");
            stack.pop_back();
            last.reset();
            ++i;
        } else {
            return fail(i, std::string("unexpected character in membrane structure"), "P007");
        }
    }
    if (!stack.empty()) return fail(s.size(), "unbalanced '('", "P007");
    if (parent.empty()) return fail(0, "empty membrane structure", "P007");
    const Label n = static_cast<Label>(parent.size());
    if (parent.rbegin()->first != n)
        return fail(0, "membrane labels must be exactly 1.." + std::to_string(n), "P004");
    std::vector<Label> out;
    for (const auto& [l, p] : parent) out.push_back(p);
    return out;
}

}  // namespace

Parsed<AnySystem> parse_system(std::string_view text) {
    Reader rd;
    std::optional<Model> model;
    std::optional<std::set<ObjectId>> alphabet;
    std::optional<std::set<ObjectId>> env;
    std::optional<std::vector<Label>> parents;
    std::optional<int> cells;
    std::optional<Label> output;
    std::map<Label, Multiset> init;
    std::vector<CellRule> cell_rules;
    std::vector<TissueRule> tissue_rules;
    std::vector<MinimalRule> minimal_rules;
    Ref model_ref{1, 1};

    for_each_line(text, [&](int ln, std::string_view line) {
        Cursor cur(line, 0);
        if (cur.eof()) return;
        const int dcol = cur.column();
        if (!cur.eat('@')) {
            rd.error(ln, dcol, "expected a directive starting with '@'", "P001");
            return;
        }
        const std::string directive(cur.ident());
        auto once = [&](bool already) {
            if (already) rd.error(ln, dcol, "duplicate @" + directive, "P005");
            return !already;
        };
        auto names = [&](std::set<ObjectId>& into) {
            while (!cur.eof()) {
                const int col = cur.column();
                auto name = cur.ident();
                const auto after = cur.rest();
                if (name.empty() || (!after.empty() && after.front() != ' ' &&
                                     after.front() != '\t' && after.front() != '\r')) {
                    rd.error(ln, col, "expected object names", "P002");
                    return false;
                }
                if (name == "empty") {
                    rd.error(ln, col, "'empty' is reserved", "P002");
                    return false;
                }
                into.insert(std::string(name));
            }
            return true;
        };
        auto trailing = [&] {
            if (!cur.eof()) {
                rd.error(ln, cur.column(), "unexpected text after @" + directive, "P007");
                return true;
            }
            return false;
        };

        if (directive == "model") {
            if (!once(model.has_value())) return;
            const int col = cur.column();
            const auto kind = cur.ident();
            if (kind == "cell") model = Model::Cell;
            else if (kind == "tissue") model = Model::Tissue;
            else if (kind == "interaction") model = Model::Interaction;
            else rd.error(ln, col, "model must be cell, tissue or interaction", "P001");
            model_ref = {ln, col};
            trailing();
            return;
        }
        if (!model) {
            rd.error(ln, dcol, "@model must come first", "P001");
            return;
        }
        if (directive == "objects") {
            if (!once(alphabet.has_value())) return;
            std::set<ObjectId> a;
            if (names(a)) alphabet = std::move(a);
            else alphabet.emplace();
        } else if (directive == "env") {
            if (!once(env.has_value())) return;
            std::set<ObjectId> e;
            const int col = cur.column();
            names(e);
            for (const auto& x : e) rd.mention(x, ln, col);
            env = std::move(e);
        } else if (directive == "membranes") {
            if (*model != Model::Cell) {
                rd.error(ln, dcol, "@membranes is only valid for the cell model", "P001");
                return;
            }
            if (!once(parents.has_value())) return;
            cur.ws();
            std::optional<SyntaxError> err;
            auto p = read_structure(cur.rest(), cur.pos(), err);
            if (!p) {
                rd.error(ln, err->column, err->message, err->code);
                parents.emplace();
                return;
            }
            parents = std::move(p);
        } else if (directive == "cells") {
            if (*model == Model::Cell) {
                rd.error(ln, dcol, "@cells is not valid for the cell model", "P001");
                return;
            }
            if (!once(cells.has_value())) return;
            const int col = [&] { cur.ws(); return cur.column(); }();
            auto n = cur.integer();
            if (!n || *n < 1 || *n > kMaxRegions) {
                rd.error(ln, col, "expected a cell count in 1.." + std::to_string(kMaxRegions), "P004");
                cells = 1;
                return;
            }
            cells = *n;
            trailing();
        } else if (directive == "init") {
            const int col = [&] { cur.ws(); return cur.column(); }();
            auto l = cur.integer();
            if (!l) {
                rd.error(ln, col, "expected a region label", "P004");
                return;
            }
            if (!cur.eat(':')) {
                rd.error(ln, cur.column(), "expected ':'", "P007");
                return;
            }
            int ecol = 0;
            std::string emsg, ecode;
            const int ms_col = [&] { cur.ws(); return cur.column(); }();
            auto m = read_multiset(cur, "", ecol, emsg, ecode);
            if (!m) {
                rd.error(ln, ecol, emsg, ecode);
                return;
            }
            if (init.count(*l)) {
                rd.error(ln, col, "duplicate @init for region " + std::to_string(*l), "P005");
                return;
            }
            rd.label(*l, false, ln, col);
            rd.mention(*m, ln, ms_col);
            init.emplace(*l, std::move(*m));
        } else if (directive == "rules") {
            Label region = 0;
            if (*model == Model::Cell) {
                const int col = [&] { cur.ws(); return cur.column(); }();
                auto l = cur.integer();
                if (!l) {
                    rd.error(ln, col, "expected a region label before ':'", "P004");
                    return;
                }
                region = *l;
                rd.label(region, false, ln, col);
            }
            if (!cur.eat(':')) {
                rd.error(ln, cur.column(), "expected ':'", "P007");
                return;
            }
            if (cur.eof()) {
                rd.error(ln, cur.column(), "expected at least one rule", "P007");
                return;
            }
            std::optional<SyntaxError> err;
            while (!cur.eof()) {
                const int rcol = cur.column();
                if (*model == Model::Cell) {
                    auto r = read_cell_rule(cur, region, err);
                    if (!r) break;
                    rd.mention(r->out, ln, rcol);
                    rd.mention(r->in, ln, rcol);
                    cell_rules.push_back(std::move(*r));
                } else if (*model == Model::Tissue) {
                    std::vector<std::pair<Label, int>> nodes;
                    auto r = read_tissue_rule(cur, err, nodes);
                    if (!r) break;
                    for (const auto& [node, c] : nodes) rd.label(node, true, ln, c);
                    rd.mention(r->x, ln, rcol);
                    rd.mention(r->y, ln, rcol);
                    tissue_rules.push_back(std::move(*r));
                } else {
                    std::vector<Placed> placed;
                    auto r = read_minimal_rule(cur, err, placed);
                    if (!r) {
                        rd.error(ln, err->column, err->message, err->code);
                        return;
                    }
                    for (const auto& p : placed) {
                        rd.mention(p.obj, ln, p.obj_col);
                        rd.label(p.node, true, ln, p.node_col);
                    }
                    minimal_rules.push_back(std::move(*r));
                }
            }
            if (err) rd.error(ln, err->column, err->message, err->code);
        } else if (directive == "output") {
            if (!once(output.has_value())) return;
            const int col = [&] { cur.ws(); return cur.column(); }();
            auto l = cur.integer();
            if (!l) {
                rd.error(ln, col, "expected an output label", "P004");
                output = 1;
                return;
            }
            output = *l;
            rd.label(*l, false, ln, col);
            trailing();
        } else {
            rd.error(ln, dcol, "unknown directive @" + directive, "P001");
        }
    });

    Parsed<AnySystem> res;
    if (!model) {
        rd.error(1, 1, "missing @model", "P006");
        res.diagnostics = std::move(rd.diags);
        return res;
    }
    if (!alphabet) rd.error(model_ref.line, 1, "missing @objects", "P006");
    if (!output) rd.error(model_ref.line, 1, "missing @output", "P006");
    int degree = 1;
    if (*model == Model::Cell) {
        if (!parents) rd.error(model_ref.line, 1, "missing @membranes", "P006");
        else degree = std::max<int>(1, static_cast<int>(parents->size()));
    } else {
        if (!cells) rd.error(model_ref.line, 1, "missing @cells", "P006");
        else degree = *cells;
    }
    const std::set<ObjectId> objs = alphabet.value_or(std::set<ObjectId>{});
    rd.resolve(objs, degree);

    if (!rd.diags.empty()) {
        std::stable_sort(rd.diags.begin(), rd.diags.end(), [](const auto& a, const auto& b) {
            return std::tie(a.line, a.column) < std::tie(b.line, b.column);
        });
        res.diagnostics = std::move(rd.diags);
        return res;
    }

    std::vector<Multiset> w(static_cast<std::size_t>(degree));
    for (auto& [l, m] : init) w[static_cast<std::size_t>(l - 1)] = std::move(m);

    switch (*model) {
        case Model::Cell: {
            CellPSystem s;
            s.alphabet = objs;
            s.structure = MembraneStructure(*parents);
            s.init = std::move(w);
            s.env = env.value_or(std::set<ObjectId>{});
            s.rules = std::move(cell_rules);
            s.output = *output;
            res.value = std::move(s);
            break;
        }
        case Model::Tissue: {
            TissuePSystem s;
            s.alphabet = objs;
            s.n_cells = degree;
            s.init = std::move(w);
            s.env = env.value_or(std::set<ObjectId>{});
            s.rules = std::move(tissue_rules);
            s.output = *output;
            res.value = std::move(s);
            break;
        }
        case Model::Interaction: {
            InteractionSystem s;
            s.alphabet = objs;
            s.n_cells = degree;
            s.init = std::move(w);
            s.env = env.value_or(std::set<ObjectId>{});
            s.rules = std::move(minimal_rules);
            s.output = *output;
            res.value = std::move(s);
            break;
        }
    }
    return res;
}

namespace {

void print_names(std::ostream& os, const char* directive, const std::set<ObjectId>& names) {
    os << directive;
    for (const auto& a : names) os << ' ' << a;
    os << '\n';
}

void print_init(std::ostream& os, const std::vector<Multiset>& init) {
    for (std::size_t l = 0; l < init.size(); ++l)
        os << "@init " << l + 1 << ": " << to_string(init[l]) << '\n';
}

}  // namespace

std::string print_system(const AnySystem& sys) {
    std::ostringstream os;
    if (const auto* c = std::get_if<CellPSystem>(&sys)) {
        const CellPSystem s = canonical(*c);
        os << "@model cell\n";
        print_names(os, "@objects", s.alphabet);
        print_names(os, "@env", s.env);
        os << "@membranes " << to_string(s.structure) << '\n';
        print_init(os, s.init);
        for (const auto& r : s.rules) os << "@rules " << r.region << ": " << to_string(r) << '\n';
        os << "@output " << s.output << '\n';
    } else if (const auto* t = std::get_if<TissuePSystem>(&sys)) {
        const TissuePSystem s = canonical(*t);
        os << "@model tissue\n";
        print_names(os, "@objects", s.alphabet);
        print_names(os, "@env", s.env);
        os << "@cells " << s.n_cells << '\n';
        print_init(os, s.init);
        for (const auto& r : s.rules) os << "@rules: " << to_string(r) << '\n';
        os << "@output " << s.output << '\n';
    } else {
        const InteractionSystem s = canonical(std::get<InteractionSystem>(sys));
        os << "@model interaction\n";
        print_names(os, "@objects", s.alphabet);
        print_names(os, "@env", s.env);
        os << "@cells " << s.n_cells << '\n';
        print_init(os, s.init);
        for (const auto& r : s.rules) os << "@rules: " << to_string(r) << '\n';
        os << "@output " << s.output << '\n';
    }
    return os.str();
}

Parsed<std::vector<MinimalRule>> parse_interactions(std::string_view text) {
    Parsed<std::vector<MinimalRule>> res;
    std::vector<MinimalRule> rules;
    for_each_line(text, [&](int ln, std::string_view line) {
        Cursor cur(line, 0);
        if (cur.eof()) return;
        std::optional<SyntaxError> err;
        std::vector<Placed> placed;
        auto r = read_minimal_rule(cur, err, placed);
        if (!r) {
            res.diagnostics.push_back({ln, err->column, err->message, err->code});
            return;
        }
        if (!cur.eof()) {
            res.diagnostics.push_back({ln, cur.column(), "one rule per line", "P007"});
            return;
        }
        for (const auto& p : placed)
            if (p.node < 0)
                res.diagnostics.push_back({ln, p.node_col, "negative node", "P004"});
        rules.push_back(std::move(*r));
    });
    if (res.diagnostics.empty()) res.value = std::move(rules);
    return res;
}

std::string print_interactions(const std::vector<MinimalRule>& rules) {
    std::string out;
    for (const auto& r : rules) out += to_string(r) + "\n";
    return out;
}

}  // namespace psys
