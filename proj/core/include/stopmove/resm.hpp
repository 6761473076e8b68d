#pragma once

#include "stopmove/olap.hpp"
#include "stopmove/smgraph.hpp"
#include "stopmove/stops.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stopmove {

enum class CmpOp { eq, ne, lt, le, gt, ge };

using Literal = std::variant<std::string, double>;

/// Boolean condition attached to one dimension atom. Atoms compare an
/// attribute of the stop's PoI with a literal, or test whether some instant
/// strictly inside the stop interval carries a given time label.
struct Condition {
    enum class Kind { all_of, any_of, negation, compare, time_label };

    Kind kind = Kind::compare;
    std::vector<Condition> operands;  ///< all_of / any_of: >= 2, negation: 1

    std::string attribute;  ///< compare
    CmpOp op = CmpOp::eq;
    Literal literal;

    std::string category;  ///< time_label
    std::string label;

    std::size_t position = 0;  ///< byte offset in the query text
};

/// Regular expression over stops:
///   E := dim | dim[cond] | (E)* | E.E | ε | ?
/// where `?` stands for any sequence of stops, including the empty one.
struct Pattern {
    enum class Kind { dim, star, concat, epsilon, wildcard };

    Kind kind = Kind::epsilon;
    std::string dim;
    std::optional<Condition> condition;
    std::vector<Pattern> children;  ///< star: 1, concat: >= 2 (never nested concats)
    std::size_t position = 0;

    static Pattern epsilon() { return {}; }
    static Pattern wildcard() {
        Pattern p;
        p.kind = Kind::wildcard;
        return p;
    }
    static Pattern atom(std::string dim, std::optional<Condition> cond = std::nullopt);
    static Pattern star(Pattern inner);
    /// Flattens nested concatenations; a single part is returned as is.
    static Pattern concat(std::vector<Pattern> parts);
};

/// Concrete syntax: dimension tokens with optional `[cond]`, `.` for
/// concatenation, `(E)*`, `?`, `ε` or `()` for the empty expression. Inside
/// conditions: `attr OP literal` with OP one of = != < <= > >= (also ≠ ≤ ≥),
/// `time(category)=label`, `and`/`or`/`not` (also ∧ ∨ ¬), parentheses;
/// text literals are single-quoted. Throws QueryError with the offending
/// byte offset.
Pattern parse_pattern(std::string_view text);

/// Normal form; parse_pattern(to_string(p)) prints back identically.
std::string to_string(const Pattern& p);
std::string to_string(const Condition& c);

/// Checks dimension names, attributes, literal kinds and time categories
/// against the context. Throws QueryError at the offending position.
void bind(const Pattern& p, const OlapContext& ctx);

/// Evaluates a condition against one stop. DomainError when an attribute
/// cannot be resolved or a literal kind does not match.
bool eval_cond(const Condition& c, const StopEvent& stop, const OlapContext& ctx);

/// Predicate-labelled NFA with epsilon moves, built by the standard
/// regular-expression construction. Keeps a pointer to the context passed
/// to compile(), which must outlive the automaton.
class Automaton {
public:
    /// Binds and compiles; throws QueryError on unbound names.
    static Automaton compile(const Pattern& p, const OlapContext& ctx);

    /// The whole sequence is in the language.
    bool accepts(std::span<const StopEvent> seq) const;

    /// Some contiguous sub-sequence (possibly empty) is in the language.
    bool matches(std::span<const StopEvent> seq) const;

    std::size_t state_count() const noexcept { return epsilon_.size(); }

private:
    struct Predicate {
        std::string dimension;  ///< canonical dimension name
        const Condition* condition = nullptr;
    };
    struct Transition {
        int predicate = -1;  ///< -1 consumes any stop
        int target = 0;
    };
    struct Fragment {
        int start;
        int accept;
    };

    Automaton() = default;
    int add_state();
    Fragment build(const Pattern& p);
    void close(std::vector<int>& states, std::vector<char>& mark) const;
    bool test(int predicate, const StopEvent& e, std::vector<signed char>& cache) const;
    void step(const std::vector<int>& from, const StopEvent& e, std::vector<int>& to,
              std::vector<char>& mark) const;

    std::shared_ptr<const Pattern> pattern_;  // conditions are referenced from here
    const OlapContext* ctx_ = nullptr;
    std::vector<Predicate> predicates_;
    std::vector<std::vector<int>> epsilon_;
    std::vector<std::vector<Transition>> consume_;
    int start_ = 0;
    int accept_ = 0;
};

/// Objects of the table whose stop sequence contains a contiguous
/// sub-sequence matching the pattern, ascending.
std::vector<ObjectId> matching_oids(const SmMoft& sm, const Pattern& p, const OlapContext& ctx);

}  // namespace stopmove
