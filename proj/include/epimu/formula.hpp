#pragma once

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epimu/process_set.hpp"
#include "epimu/value.hpp"

namespace epimu {

/// input_a=v or decide_a=v.
struct AtomicProp {
    enum class Kind { Input, Decide };
    Kind kind = Kind::Input;
    ProcessId process = 0;
    Value value;

    friend std::strong_ordering operator<=>(const AtomicProp& x, const AtomicProp& y)
    {
        if (auto c = x.kind <=> y.kind; c != 0)
            return c;
        if (auto c = x.process <=> y.process; c != 0)
            return c;
        return x.value <=> y.value;
    }
    friend bool operator==(const AtomicProp& x, const AtomicProp& y) { return (x <=> y) == 0; }

    /// `input(a)=v` / `decide(a)=v`.
    std::string to_string() const;
};

AtomicProp input_atom(ProcessId a, int v);
AtomicProp decide_atom(ProcessId a, int v);

enum class Notation { Ascii, Unicode };

/// A positive epistemic mu-calculus formula. Negation exists only on atoms, and a
/// fixpoint variable may not be rebound inside its own body. Immutable and shared.
class Formula {
public:
    enum class Kind { Atom, NegAtom, Var, And, Or, DKnow, Nu };

    static Formula atom(AtomicProp p);
    static Formula neg_atom(AtomicProp p);
    static Formula var(std::string name);
    /// Empty conjunction is true.
    static Formula conj(std::vector<Formula> items);
    /// Empty disjunction is false.
    static Formula disj(std::vector<Formula> items);
    /// Distributed knowledge of a nonempty group; an empty group is rejected.
    static Formula dknow(ProcessSet group, Formula body);
    /// Greatest fixpoint; throws PreconditionError if `name` is already bound inside body.
    static Formula nu(std::string name, Formula body);

    Kind kind() const;
    const AtomicProp& atom_prop() const;
    const std::string& name() const;
    std::span<const Formula> children() const;
    const Formula& body() const;
    ProcessSet group() const;

    /// Sorted names of free variables.
    std::span<const std::string> free_vars() const;
    std::span<const std::string> bound_vars() const;
    bool is_closed() const { return free_vars().empty(); }
    /// No variables, modalities, or fixpoints.
    bool is_propositional() const;
    bool mentions_var(std::string_view name) const;
    std::size_t node_count() const;

    /// Stable identity of the underlying node.
    const void* id() const { return node_.get(); }

    std::string to_string(Notation notation = Notation::Ascii) const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula nary(Kind kind, std::vector<Formula> items);
    std::shared_ptr<const Node> node_;
};

Formula truth();
Formula falsity();

/// De Morgan dual of a propositional formula; throws PreconditionError otherwise.
Formula negate(const Formula& f);

/// phi => psi, expanded to negate(phi) | psi. phi must be propositional.
Formula implies(const Formula& antecedent, const Formula& consequent);

/// nu Z.(psi & /\_{a in A} D{a} Z) with Z chosen fresh for psi.
Formula common_knowledge(ProcessSet group, const Formula& psi);

/// Parses the text grammar: atoms `input(a)=v`, `decide(a)=v`, `~` on atoms, `&`, `|`,
/// `=>` (propositional antecedent), `D{a,b} phi`, `C{a,b} phi`, `nu Z. phi`, `true`,
/// `false`, parentheses. Throws ParseError with a character position.
Formula parse_formula(std::string_view text);

}  // namespace epimu
