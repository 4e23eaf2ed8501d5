#ifndef PSYS_MULTISET_HPP
#define PSYS_MULTISET_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace psys {

using ObjectId = std::string;
using Count = std::uint64_t;

/// True for a non-empty token over [A-Za-z0-9_].
bool is_object_name(std::string_view name);

/**
 * Finite multiset over object names.
 *
 * Counts are stored in a name-sorted map with no zero entries, so iteration
 * order is canonical and two multisets are equal iff their maps are equal.
 * Arithmetic is checked: additions that would overflow 64 bits throw
 * std::overflow_error, and subtracting a non-sub-multiset throws
 * std::logic_error (that only happens on an engine defect).
 */
class Multiset {
public:
    using Storage = std::map<ObjectId, Count>;
    using const_iterator = Storage::const_iterator;

    Multiset() = default;
    Multiset(std::initializer_list<std::pair<const ObjectId, Count>> items);

    /// Single object with multiplicity n (n == 0 yields the empty multiset).
    static Multiset of(const ObjectId& a, Count n = 1);

    Count count(const ObjectId& a) const;
    Count size() const;
    bool empty() const { return counts_.empty(); }
    std::size_t distinct() const { return counts_.size(); }

    void add(const ObjectId& a, Count n = 1);
    void remove(const ObjectId& a, Count n = 1);

    Multiset& operator+=(const Multiset& other);
    Multiset& operator-=(const Multiset& other);

    /// Each count multiplied by k.
    Multiset scaled(Count k) const;

    std::set<ObjectId> support() const;

    const_iterator begin() const { return counts_.begin(); }
    const_iterator end() const { return counts_.end(); }

    friend bool operator==(const Multiset&, const Multiset&) = default;
    friend std::strong_ordering operator<=>(const Multiset& a, const Multiset& b) {
        return a.counts_ <=> b.counts_;
    }

private:
    Storage counts_;
};

Count ms_size(const Multiset& m);
bool ms_leq(const Multiset& x, const Multiset& y);
Multiset ms_add(const Multiset& x, const Multiset& y);
Multiset ms_sub(const Multiset& x, const Multiset& y);

/// Largest k with k·x ⊆ y. Returns nullopt when x is empty (unbounded).
std::optional<Count> ms_max_copies(const Multiset& x, const Multiset& y);

/// Overflow-checked helpers shared by everything that sums counts.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

/// `a^3 b` style; the empty multiset prints as `empty`.
std::string to_string(const Multiset& m);

struct MultisetParseError {
    std::size_t offset;  // byte offset into the parsed text
    std::string message;
};

/// Parses `empty | item (WS item)*` with item := NAME ('^' POSITIVE_INT)?.
/// Repeated names accumulate.
std::pair<std::optional<Multiset>, std::optional<MultisetParseError>>
parse_multiset(std::string_view text);

/**
 * Environment content: objects of `infinite_support` (the set E) are present
 * in unboundedly many copies; everything else is tracked exactly in
 * `finite_part`. The two never overlap.
 */
class EnvContent {
public:
    EnvContent() = default;
    explicit EnvContent(std::set<ObjectId> infinite_support, Multiset finite = {});

    const std::set<ObjectId>& infinite_support() const { return infinite_; }
    const Multiset& finite_part() const { return finite_; }
    bool is_infinite(const ObjectId& a) const { return infinite_.count(a) != 0; }

    /// Objects of E entering the environment join the infinite pool.
    void deposit(const Multiset& x);
    /// Takes x out; only the non-E part is tracked. Throws on underflow.
    void withdraw(const Multiset& x);

    friend bool operator==(const EnvContent&, const EnvContent&) = default;
    friend std::strong_ordering operator<=>(const EnvContent& a, const EnvContent& b) {
        if (auto c = a.infinite_ <=> b.infinite_; c != 0) return c;
        return a.finite_ <=> b.finite_;
    }

private:
    std::set<ObjectId> infinite_;
    Multiset finite_;
};

bool env_available(const EnvContent& e, const Multiset& x);

}  // namespace psys

#endif  // PSYS_MULTISET_HPP
