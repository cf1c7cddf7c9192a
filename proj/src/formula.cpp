#include "epimu/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "epimu/errors.hpp"

namespace epimu {

std::string AtomicProp::to_string() const
{
    return std::string(kind == Kind::Input ? "input(" : "decide(") + std::to_string(process) + ")="
        + value.to_string();
}

AtomicProp input_atom(ProcessId a, int v)
{
    return {AtomicProp::Kind::Input, a, Value::base(v)};
}

AtomicProp decide_atom(ProcessId a, int v)
{
    return {AtomicProp::Kind::Decide, a, Value::base(v)};
}

struct Formula::Node {
    Kind kind;
    AtomicProp atom;
    std::string name;
    ProcessSet group;
    std::vector<Formula> children;
    std::vector<std::string> free;
    std::vector<std::string> bound;
    bool propositional = true;
    std::size_t count = 1;
};

namespace {

std::vector<std::string> merge_names(std::vector<std::string> a, const std::vector<std::string>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

}  // namespace

Formula Formula::atom(AtomicProp p)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = std::move(p);
    return Formula(std::move(n));
}

Formula Formula::neg_atom(AtomicProp p)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::NegAtom;
    n->atom = std::move(p);
    return Formula(std::move(n));
}

Formula Formula::var(std::string name)
{
    if (name.empty())
        throw PreconditionError("variable name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->free = {name};
    n->name = std::move(name);
    n->propositional = false;
    return Formula(std::move(n));
}

Formula Formula::nary(Kind kind, std::vector<Formula> items)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    for (const auto& f : items) {
        n->free = merge_names(std::move(n->free), {f.free_vars().begin(), f.free_vars().end()});
        n->bound = merge_names(std::move(n->bound), {f.bound_vars().begin(), f.bound_vars().end()});
        n->propositional = n->propositional && f.is_propositional();
        n->count += f.node_count();
    }
    n->children = std::move(items);
    return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> items)
{
    return nary(Kind::And, std::move(items));
}

Formula Formula::disj(std::vector<Formula> items)
{
    return nary(Kind::Or, std::move(items));
}

Formula Formula::dknow(ProcessSet group, Formula body)
{
    if (group.empty())
        throw PreconditionError("distributed knowledge of the empty group is undefined");
    auto n = std::make_shared<Node>();
    n->kind = Kind::DKnow;
    n->group = group;
    n->free = {body.free_vars().begin(), body.free_vars().end()};
    n->bound = {body.bound_vars().begin(), body.bound_vars().end()};
    n->propositional = false;
    n->count = 1 + body.node_count();
    n->children = {std::move(body)};
    return Formula(std::move(n));
}

Formula Formula::nu(std::string name, Formula body)
{
    if (name.empty())
        throw PreconditionError("variable name must be nonempty");
    if (std::binary_search(body.bound_vars().begin(), body.bound_vars().end(), name))
        throw PreconditionError("variable '" + name + "' is rebound inside its own fixpoint body");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Nu;
    for (const auto& v : body.free_vars())
        if (v != name)
            n->free.push_back(v);
    n->bound = merge_names({body.bound_vars().begin(), body.bound_vars().end()}, {name});
    n->propositional = false;
    n->count = 1 + body.node_count();
    n->name = std::move(name);
    n->children = {std::move(body)};
    return Formula(std::move(n));
}

Formula::Kind Formula::kind() const
{
    return node_->kind;
}

const AtomicProp& Formula::atom_prop() const
{
    if (kind() != Kind::Atom && kind() != Kind::NegAtom)
        throw PreconditionError("formula is not a literal");
    return node_->atom;
}

const std::string& Formula::name() const
{
    if (kind() != Kind::Var && kind() != Kind::Nu)
        throw PreconditionError("formula has no variable name");
    return node_->name;
}

std::span<const Formula> Formula::children() const
{
    return node_->children;
}

const Formula& Formula::body() const
{
    if (kind() != Kind::DKnow && kind() != Kind::Nu)
        throw PreconditionError("formula has no body");
    return node_->children.front();
}

ProcessSet Formula::group() const
{
    return node_->group;
}

std::span<const std::string> Formula::free_vars() const
{
    return node_->free;
}

std::span<const std::string> Formula::bound_vars() const
{
    return node_->bound;
}

bool Formula::is_propositional() const
{
    return node_->propositional;
}

bool Formula::mentions_var(std::string_view name) const
{
    auto has = [&](std::span<const std::string> names) {
        return std::find(names.begin(), names.end(), name) != names.end();
    };
    return has(free_vars()) || has(bound_vars());
}

std::size_t Formula::node_count() const
{
    return node_->count;
}

std::string Formula::to_string(Notation notation) const
{
    const bool uni = notation == Notation::Unicode;
    switch (kind()) {
    case Kind::Atom:
        return node_->atom.to_string();
    case Kind::NegAtom:
        return (uni ? "¬" : "~") + node_->atom.to_string();
    case Kind::Var:
        return node_->name;
    case Kind::And:
    case Kind::Or: {
        const bool is_and = kind() == Kind::And;
        if (node_->children.empty())
            return is_and ? (uni ? "⊤" : "true") : (uni ? "⊥" : "false");
        if (node_->children.size() == 1)
            return node_->children.front().to_string(notation);
        std::string sep = is_and ? (uni ? " ∧ " : " & ") : (uni ? " ∨ " : " | ");
        std::string s = "(";
        for (std::size_t i = 0; i < node_->children.size(); ++i) {
            if (i)
                s += sep;
            s += node_->children[i].to_string(notation);
        }
        return s + ")";
    }
    case Kind::DKnow:
        return (uni ? "D_" : "D") + node_->group.to_string() + " " + body().to_string(notation);
    case Kind::Nu:
        return std::string("(") + (uni ? "ν" : "nu ") + node_->name + ". " + body().to_string(notation) + ")";
    }
    return {};
}

Formula truth()
{
    return Formula::conj({});
}

Formula falsity()
{
    return Formula::disj({});
}

Formula negate(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::Atom:
        return Formula::neg_atom(f.atom_prop());
    case Formula::Kind::NegAtom:
        return Formula::atom(f.atom_prop());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> items;
        items.reserve(f.children().size());
        for (const auto& c : f.children())
            items.push_back(negate(c));
        return f.kind() == Formula::Kind::And ? Formula::disj(std::move(items)) : Formula::conj(std::move(items));
    }
    default:
        throw PreconditionError("only propositional formulas can be negated: " + f.to_string());
    }
}

Formula implies(const Formula& antecedent, const Formula& consequent)
{
    if (!antecedent.is_propositional())
        throw PreconditionError("implication antecedent must be propositional: " + antecedent.to_string());
    return Formula::disj({negate(antecedent), consequent});
}

Formula common_knowledge(ProcessSet group, const Formula& psi)
{
    if (group.empty())
        throw PreconditionError("common knowledge of the empty group is undefined");
    std::string z;
    for (int i = 0;; ++i) {
        z = "CK" + std::to_string(i);
        if (!psi.mentions_var(z))
            break;
    }
    std::vector<Formula> items{psi};
    for (auto a : group)
        items.push_back(Formula::dknow(ProcessSet::singleton(a), Formula::var(z)));
    return Formula::nu(z, Formula::conj(std::move(items)));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse()
    {
        Formula f = parse_implication();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(std::string_view tok)
    {
        skip_ws();
        return text_.substr(pos_, tok.size()) == tok;
    }

    bool accept(std::string_view tok)
    {
        if (!peek(tok))
            return false;
        pos_ += tok.size();
        return true;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok))
            fail("expected '" + std::string(tok) + "'");
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    /// Accepts a keyword only when it is not a prefix of a longer identifier.
    bool accept_keyword(std::string_view kw)
    {
        if (!peek(kw))
            return false;
        std::size_t end = pos_ + kw.size();
        if (end < text_.size() && ident_char(text_[end]))
            return false;
        pos_ = end;
        return true;
    }

    std::string identifier()
    {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            fail("expected identifier");
        while (pos_ < text_.size() && ident_char(text_[pos_]))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    int integer()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    ProcessSet process_set()
    {
        expect("{");
        ProcessSet s;
        if (accept("}"))
            return s;
        do {
            int a = integer();
            if (a < 0 || a >= kMaxProcesses)
                fail("process id out of range");
            s.insert(a);
        } while (accept(","));
        expect("}");
        return s;
    }

    Formula parse_implication()
    {
        Formula lhs = parse_or();
        std::size_t at = (skip_ws(), pos_);
        if (accept("=>")) {
            Formula rhs = parse_implication();
            if (!lhs.is_propositional())
                throw ParseError("antecedent of '=>' must be propositional", at);
            return implies(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_or()
    {
        std::vector<Formula> items{parse_and()};
        while (accept("|"))
            items.push_back(parse_and());
        return items.size() == 1 ? items.front() : Formula::disj(std::move(items));
    }

    Formula parse_and()
    {
        std::vector<Formula> items{parse_unary()};
        while (accept("&"))
            items.push_back(parse_unary());
        return items.size() == 1 ? items.front() : Formula::conj(std::move(items));
    }

    std::optional<AtomicProp> try_atom()
    {
        AtomicProp::Kind kind;
        if (accept_keyword("input"))
            kind = AtomicProp::Kind::Input;
        else if (accept_keyword("decide"))
            kind = AtomicProp::Kind::Decide;
        else
            return std::nullopt;
        expect("(");
        int a = integer();
        expect(")");
        expect("=");
        int v = integer();
        return AtomicProp{kind, a, Value::base(v)};
    }

    Formula parse_unary()
    {
        skip_ws();
        std::size_t at = pos_;
        if (accept("(")) {
            Formula f = parse_implication();
            expect(")");
            return f;
        }
        if (accept("~")) {
            auto p = try_atom();
            if (!p)
                throw ParseError("'~' applies only to atoms", at);
            return Formula::neg_atom(*p);
        }
        if (auto p = try_atom())
            return Formula::atom(*p);
        if (accept_keyword("true"))
            return truth();
        if (accept_keyword("false"))
            return falsity();
        if (accept_keyword("nu")) {
            std::string z = identifier();
            expect(".");
            Formula body = parse_implication();
            try {
                return Formula::nu(z, body);
            } catch (const PreconditionError& e) {
                throw ParseError(e.what(), at);
            }
        }
        for (char op : {'D', 'C'}) {
            if (peek(std::string(1, op) + "{") || (peek(std::string(1, op)) && next_nonspace_after(pos_ + 1) == '{')) {
                expect(std::string(1, op));
                ProcessSet g = process_set();
                if (g.empty())
                    throw ParseError("empty process group", at);
                Formula body = parse_unary();
                return op == 'D' ? Formula::dknow(g, body) : common_knowledge(g, body);
            }
        }
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            return Formula::var(identifier());
        fail("expected formula");
    }

    char next_nonspace_after(std::size_t p) const
    {
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])))
            ++p;
        return p < text_.size() ? text_[p] : '\0';
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text)
{
    return Parser(text).parse();
}

}  // namespace epimu
