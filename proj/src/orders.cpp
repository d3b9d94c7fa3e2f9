#include "kishon/orders.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace kishon::orders {

namespace {

constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

void require_size(std::size_t n)
{
    if (n > Precedence::kMaxSize)
        throw OrderError("order on " + std::to_string(n) + " elements exceeds the supported size");
}

} // namespace

bool is_strict_partial_order(const Relation& r)
{
    require_size(r.size);
    std::vector<std::uint64_t> succ(r.size, 0);
    for (auto [i, j] : r.pairs) {
        if (i >= r.size || j >= r.size) return false;
        if (i == j) return false;
        succ[i] |= bit(j);
    }
    for (std::size_t i = 0; i < r.size; ++i)
        for (std::size_t j = 0; j < r.size; ++j)
            if ((succ[i] & bit(j)) && (succ[j] & ~succ[i])) return false;
    return true;
}

Precedence::Precedence(std::size_t n) : n_(n), succ_(n, 0) { require_size(n); }

Precedence Precedence::closure_of(std::size_t n, std::span<const Pair> pairs)
{
    Precedence p(n);
    for (auto [i, j] : pairs) {
        if (i >= n || j >= n) throw OrderError("pair names an element outside the ground set");
        p.succ_[i] |= bit(j);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (p.succ_[i] & bit(k)) p.succ_[i] |= p.succ_[k];
    for (std::size_t i = 0; i < n; ++i)
        if (p.succ_[i] & bit(i)) throw OrderError("relation has a cycle through element " + std::to_string(i));
    return p;
}

Precedence Precedence::chain(std::size_t n)
{
    Precedence p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) p.succ_[i] |= bit(j);
    return p;
}

std::uint64_t Precedence::predecessors(std::size_t i) const noexcept
{
    std::uint64_t preds = 0;
    for (std::size_t j = 0; j < n_; ++j)
        if (precedes(j, i)) preds |= bit(j);
    return preds;
}

std::vector<Pair> Precedence::pairs() const
{
    std::vector<Pair> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (precedes(i, j)) out.emplace_back(i, j);
    return out;
}

bool is_russell_wiener(const Precedence& p)
{
    // a<b, c<d, !(c<b)  =>  a<d
    const std::size_t n = p.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!p.precedes(a, b)) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (p.precedes(c, b)) continue;
                if (p.successors(c) & ~p.successors(a)) return false;
            }
        }
    return true;
}

bool is_russell_wiener(const Relation& r)
{
    if (!is_strict_partial_order(r)) throw OrderError("input is not a strict partial order");
    return is_russell_wiener(Precedence::closure_of(r.size, r.pairs));
}

Precedence order_from_action_sequence(std::span<const Action> sequence)
{
    std::size_t m = 0;
    for (const auto& a : sequence) m = std::max(m, a.event + 1);
    require_size(m);

    std::vector<std::size_t> begin_at(m, SIZE_MAX), end_at(m, SIZE_MAX);
    for (std::size_t pos = 0; pos < sequence.size(); ++pos) {
        const auto& a = sequence[pos];
        auto& slot = a.kind == Action::Kind::Begin ? begin_at[a.event] : end_at[a.event];
        if (slot != SIZE_MAX)
            throw OrderError("event " + std::to_string(a.event) + " has a duplicate " +
                             (a.kind == Action::Kind::Begin ? "begin" : "end"));
        slot = pos;
    }
    for (std::size_t e = 0; e < m; ++e) {
        if (begin_at[e] == SIZE_MAX || end_at[e] == SIZE_MAX)
            throw OrderError("event " + std::to_string(e) + " is missing its begin or end");
        if (end_at[e] < begin_at[e]) throw OrderError("event " + std::to_string(e) + " ends before it begins");
    }

    std::vector<Pair> pairs;
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            if (end_at[x] < begin_at[y]) pairs.emplace_back(x, y);
    // Already transitive; closure_of only re-asserts it.
    return Precedence::closure_of(m, pairs);
}

IntervalRealization realize_intervals(const Precedence& p)
{
    const std::size_t n = p.size();
    // Down-sets of an interval order form a chain under inclusion.
    std::vector<std::uint64_t> downs;
    for (std::size_t x = 0; x < n; ++x) downs.push_back(p.predecessors(x));
    std::vector<std::uint64_t> distinct = downs;
    std::sort(distinct.begin(), distinct.end(),
              [](std::uint64_t l, std::uint64_t r) { return std::popcount(l) < std::popcount(r); });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
        if ((distinct[i] & ~distinct[i + 1]) != 0 || distinct[i] == distinct[i + 1])
            throw OrderError("order is not Russell-Wiener; no interval realization exists");

    IntervalRealization r;
    r.intervals.resize(n);
    const int top = static_cast<int>(distinct.size()) - 1;
    for (std::size_t x = 0; x < n; ++x) {
        auto rank = std::find(distinct.begin(), distinct.end(), downs[x]) - distinct.begin();
        r.intervals[x].left = static_cast<int>(rank);
        // Last instant before the first down-set that contains x.
        int right = std::max(top, 0);
        for (std::size_t j = 0; j < distinct.size(); ++j)
            if (distinct[j] & bit(x)) {
                right = static_cast<int>(j) - 1;
                break;
            }
        r.intervals[x].right = right;
    }
    if (order_from_intervals(r) != p)
        throw OrderError("order is not Russell-Wiener; no interval realization exists");
    return r;
}

Precedence order_from_intervals(const IntervalRealization& r)
{
    const std::size_t n = r.intervals.size();
    std::vector<Pair> pairs;
    for (std::size_t x = 0; x < n; ++x) {
        if (r.intervals[x].left > r.intervals[x].right) throw OrderError("interval with left > right");
        for (std::size_t y = 0; y < n; ++y)
            if (r.intervals[x].right < r.intervals[y].left) pairs.emplace_back(x, y);
    }
    return Precedence::closure_of(n, pairs);
}

void for_each_two_chain_interleaving(std::size_t k, const std::function<void(std::span<const Action>)>& visit)
{
    if (k == 0) throw OrderError("chain length must be at least 1");
    require_size(2 * k);
    // Each chain contributes begin(1), end(1), begin(2), ... in fixed order.
    const std::size_t len = 2 * k;
    auto action_of = [k](int process, std::size_t pos) {
        std::size_t e = two_chain_element(process, static_cast<int>(pos / 2 + 1), k);
        return pos % 2 == 0 ? Action::begin(e) : Action::end(e);
    };
    std::vector<Action> seq;
    seq.reserve(2 * len);
    auto rec = [&](auto& self, std::size_t used0, std::size_t used1) -> void {
        if (used0 == len && used1 == len) {
            visit(seq);
            return;
        }
        if (used0 < len) {
            seq.push_back(action_of(0, used0));
            self(self, used0 + 1, used1);
            seq.pop_back();
        }
        if (used1 < len) {
            seq.push_back(action_of(1, used1));
            self(self, used0, used1 + 1);
            seq.pop_back();
        }
    };
    rec(rec, 0, 0);
}

std::vector<Precedence> enumerate_two_chain_orders(std::size_t k)
{
    std::set<Precedence> seen;
    for_each_two_chain_interleaving(k, [&](std::span<const Action> seq) {
        seen.insert(order_from_action_sequence(seq));
    });
    return {seen.begin(), seen.end()};
}

std::vector<std::string> two_chain_labels(std::size_t k)
{
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= k; ++i) labels.push_back("a" + std::to_string(i));
    for (std::size_t i = 1; i <= k; ++i) labels.push_back("b" + std::to_string(i));
    return labels;
}

nlohmann::json to_json(const Precedence& p)
{
    nlohmann::json pairs = nlohmann::json::array();
    for (auto [i, j] : p.pairs()) pairs.push_back(nlohmann::json::array({i, j}));
    return {{"size", p.size()}, {"pairs", std::move(pairs)}};
}

nlohmann::json to_json(const Precedence& p, std::span<const std::string> labels)
{
    if (labels.size() != p.size()) throw OrderError("label count does not match order size");
    std::vector<std::pair<std::string, std::string>> named;
    for (auto [i, j] : p.pairs()) named.emplace_back(labels[i], labels[j]);
    std::sort(named.begin(), named.end());
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [l, r] : named) pairs.push_back(nlohmann::json::array({l, r}));
    return {{"size", p.size()}, {"pairs", std::move(pairs)}};
}

} // namespace kishon::orders
