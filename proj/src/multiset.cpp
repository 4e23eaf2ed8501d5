#include "psys/multiset.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace psys {

namespace {

bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

}  // namespace

bool is_object_name(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name)
        if (!is_name_char(c)) return false;
    return true;
}

Count checked_add(Count a, Count b) {
    if (a > std::numeric_limits<Count>::max() - b)
        throw std::overflow_error("multiplicity overflow");
    return a + b;
}

Count checked_mul(Count a, Count b) {
    if (a != 0 && b > std::numeric_limits<Count>::max() / a)
        throw std::overflow_error("multiplicity overflow");
    return a * b;
}

Multiset::Multiset(std::initializer_list<std::pair<const ObjectId, Count>> items) {
    for (const auto& [a, n] : items) add(a, n);
}

Multiset Multiset::of(const ObjectId& a, Count n) {
    Multiset m;
    m.add(a, n);
    return m;
}

Count Multiset::count(const ObjectId& a) const {
    auto it = counts_.find(a);
    return it == counts_.end() ? 0 : it->second;
}

Count Multiset::size() const {
    Count total = 0;
    for (const auto& [a, n] : counts_) total = checked_add(total, n);
    return total;
}

void Multiset::add(const ObjectId& a, Count n) {
    if (n == 0) return;
    auto& slot = counts_[a];
    slot = checked_add(slot, n);
}

void Multiset::remove(const ObjectId& a, Count n) {
    if (n == 0) return;
    auto it = counts_.find(a);
    if (it == counts_.end() || it->second < n)
        throw std::logic_error("multiset underflow removing " + a);
    it->second -= n;
    if (it->second == 0) counts_.erase(it);
}

Multiset& Multiset::operator+=(const Multiset& other) {
    for (const auto& [a, n] : other) add(a, n);
    return *this;
}

Multiset& Multiset::operator-=(const Multiset& other) {
    if (!ms_leq(other, *this)) throw std::logic_error("multiset underflow in subtraction");
    for (const auto& [a, n] : other) remove(a, n);
    return *this;
}

Multiset Multiset::scaled(Count k) const {
    Multiset out;
    if (k == 0) return out;
    for (const auto& [a, n] : counts_) out.counts_.emplace(a, checked_mul(n, k));
    return out;
}

std::set<ObjectId> Multiset::support() const {
    std::set<ObjectId> s;
    for (const auto& [a, n] : counts_) s.insert(a);
    return s;
}

Count ms_size(const Multiset& m) { return m.size(); }

bool ms_leq(const Multiset& x, const Multiset& y) {
    for (const auto& [a, n] : x)
        if (y.count(a) < n) return false;
    return true;
}

Multiset ms_add(const Multiset& x, const Multiset& y) {
    Multiset r = x;
    r += y;
    return r;
}

Multiset ms_sub(const Multiset& x, const Multiset& y) {
    Multiset r = x;
    r -= y;
    return r;
}

std::optional<Count> ms_max_copies(const Multiset& x, const Multiset& y) {
    std::optional<Count> best;
    for (const auto& [a, n] : x) {
        Count k = y.count(a) / n;
        if (!best || k < *best) best = k;
    }
    return best;
}

std::string to_string(const Multiset& m) {
    if (m.empty()) return "empty";
    std::string out;
    for (const auto& [a, n] : m) {
        if (!out.empty()) out += ' ';
        out += a;
        if (n != 1) {
            out += '^';
            out += std::to_string(n);
        }
    }
    return out;
}

std::pair<std::optional<Multiset>, std::optional<MultisetParseError>>
parse_multiset(std::string_view text) {
    auto fail = [](std::size_t at, std::string msg) {
        return std::pair<std::optional<Multiset>, std::optional<MultisetParseError>>{
            std::nullopt, MultisetParseError{at, std::move(msg)}};
    };
    Multiset m;
    std::size_t pos = 0;
    std::size_t items = 0;
    bool saw_empty = false;
    while (true) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        if (pos >= text.size()) break;
        std::size_t start = pos;
        while (pos < text.size() && is_name_char(text[pos])) ++pos;
        if (pos == start) return fail(start, "expected object name");
        std::string_view name = text.substr(start, pos - start);
        Count n = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            std::size_t num_start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (pos == num_start) return fail(num_start, "expected multiplicity after '^'");
            auto [ptr, ec] = std::from_chars(text.data() + num_start, text.data() + pos, n);
            if (ec != std::errc{} || ptr != text.data() + pos)
                return fail(num_start, "multiplicity out of range");
            if (n == 0) return fail(num_start, "zero multiplicity is not allowed");
        }
        if (pos < text.size() && !is_space(text[pos]))
            return fail(pos, std::string("unexpected character '") + text[pos] + "'");
        if (name == "empty") {
            if (n != 1) return fail(start, "'empty' takes no multiplicity");
            saw_empty = true;
        } else {
            try {
                m.add(std::string(name), n);
            } catch (const std::overflow_error&) {
                return fail(start, "multiplicity overflow");
            }
        }
        ++items;
    }
    if (items == 0) return fail(0, "expected a multiset (use 'empty' for none)");
    if (saw_empty && items > 1) return fail(0, "'empty' cannot be combined with objects");
    return {std::move(m), std::nullopt};
}

EnvContent::EnvContent(std::set<ObjectId> infinite_support, Multiset finite)
    : infinite_(std::move(infinite_support)) {
    deposit(finite);
}

void EnvContent::deposit(const Multiset& x) {
    for (const auto& [a, n] : x)
        if (!is_infinite(a)) finite_.add(a, n);
}

void EnvContent::withdraw(const Multiset& x) {
    for (const auto& [a, n] : x)
        if (!is_infinite(a)) finite_.remove(a, n);
}

bool env_available(const EnvContent& e, const Multiset& x) {
    for (const auto& [a, n] : x)
        if (!e.is_infinite(a) && e.finite_part().count(a) < n) return false;
    return true;
}

}  // namespace psys
