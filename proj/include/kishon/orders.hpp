#pragma once

// Strict partial orders and interval (Russell-Wiener) orders over small
// labeled ground sets {0, ..., n-1}, n <= 64.

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kishon::orders {

class OrderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Pair = std::pair<std::size_t, std::size_t>;

/// Arbitrary binary relation; may be neither irreflexive nor transitive.
struct Relation {
    std::size_t size = 0;
    std::vector<Pair> pairs;
};

bool is_strict_partial_order(const Relation& r);

/// Strict partial order. Every constructor yields an irreflexive, transitive
/// relation; a cyclic generating set is rejected with OrderError.
class Precedence {
public:
    static constexpr std::size_t kMaxSize = 64;

    Precedence() = default;
    explicit Precedence(std::size_t n);

    /// Transitive closure of `pairs`.
    static Precedence closure_of(std::size_t n, std::span<const Pair> pairs);
    static Precedence chain(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    bool precedes(std::size_t i, std::size_t j) const noexcept { return (succ_[i] >> j) & 1u; }
    /// Incomparable; every element is concurrent with itself.
    bool concurrent(std::size_t i, std::size_t j) const noexcept { return !precedes(i, j) && !precedes(j, i); }
    bool comparable(std::size_t i, std::size_t j) const noexcept { return !concurrent(i, j); }

    std::uint64_t successors(std::size_t i) const noexcept { return succ_[i]; }
    std::uint64_t predecessors(std::size_t i) const noexcept;

    /// Sorted lexicographically; the canonical form.
    std::vector<Pair> pairs() const;
    Relation relation() const { return {n_, pairs()}; }

    auto operator<=>(const Precedence&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> succ_;
};

bool is_russell_wiener(const Precedence& p);
/// Throws OrderError when `r` is not a strict partial order.
bool is_russell_wiener(const Relation& r);

struct Action {
    enum class Kind { Begin, End };
    std::size_t event = 0;
    Kind kind = Kind::Begin;

    static Action begin(std::size_t e) { return {e, Kind::Begin}; }
    static Action end(std::size_t e) { return {e, Kind::End}; }
    bool operator==(const Action&) const = default;
};

/// x precedes y iff end(x) occurs before begin(y). Events are 0..m-1 where m
/// is one more than the largest event mentioned; each must begin exactly once
/// and end exactly once afterwards.
Precedence order_from_action_sequence(std::span<const Action> sequence);

struct Interval {
    int left = 0;
    int right = 0;
    bool operator==(const Interval&) const = default;
};

struct IntervalRealization {
    std::vector<Interval> intervals;
    bool operator==(const IntervalRealization&) const = default;
};

/// Closed integer intervals with x < y iff right(x) < left(y).
/// Throws OrderError if `p` is not an interval order.
IntervalRealization realize_intervals(const Precedence& p);
Precedence order_from_intervals(const IntervalRealization& r);

/// Element index of the k-chain member `index` (1-based) of `process` (0 or 1)
/// in the two-chain ground set: process 0 occupies 0..k-1, process 1 k..2k-1.
constexpr std::size_t two_chain_element(int process, int index, std::size_t k) noexcept
{
    return static_cast<std::size_t>(process) * k + static_cast<std::size_t>(index - 1);
}

/// Visits every interleaving of the begin/end strings of two k-chains.
void for_each_two_chain_interleaving(std::size_t k, const std::function<void(std::span<const Action>)>& visit);

/// All distinct interval orders extending the chains a1<...<ak and b1<...<bk,
/// sorted by canonical form.
std::vector<Precedence> enumerate_two_chain_orders(std::size_t k);

/// Labels used when serializing two-chain orders: a1..ak, b1..bk.
std::vector<std::string> two_chain_labels(std::size_t k);

nlohmann::json to_json(const Precedence& p);
nlohmann::json to_json(const Precedence& p, std::span<const std::string> labels);

} // namespace kishon::orders
