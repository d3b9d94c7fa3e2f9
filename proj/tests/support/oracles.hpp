#pragma once

// Reference implementations used only by the tests. None of these call into
// the library's order, semantics or register code.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

/// Strict order on {0..n-1}: bit j of less[i] set iff i < j.
struct SmallPoset {
    int n = 0;
    std::array<std::uint8_t, 8> less{};

    bool lt(int i, int j) const { return (less[i] >> j) & 1; }
    bool incomparable(int i, int j) const { return i != j && !lt(i, j) && !lt(j, i); }

    std::vector<std::pair<std::size_t, std::size_t>> pairs() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (lt(i, j)) out.emplace_back(i, j);
        return out;
    }
};

/// Every labeled strict partial order on `n` points. Built by inserting the
/// last point with a down-closed predecessor set D and an up-closed successor
/// set U such that every member of D lies below every member of U.
inline void for_each_labeled_poset(int n, const std::function<void(const SmallPoset&)>& visit)
{
    std::function<void(const SmallPoset&)> grow = [&](const SmallPoset& p) {
        if (p.n == n) {
            visit(p);
            return;
        }
        const int m = p.n;
        for (unsigned down = 0; down < (1u << m); ++down) {
            bool closed = true;
            for (int d = 0; d < m && closed; ++d)
                if ((down >> d) & 1)
                    for (int e = 0; e < m; ++e)
                        if (p.lt(e, d) && !((down >> e) & 1)) closed = false;
            if (!closed) continue;
            for (unsigned up = 0; up < (1u << m); ++up) {
                if (up & down) continue;
                bool ok = true;
                for (int u = 0; u < m && ok; ++u) {
                    if (!((up >> u) & 1)) continue;
                    for (int e = 0; e < m && ok; ++e)
                        if (p.lt(u, e) && !((up >> e) & 1)) ok = false;
                    for (int d = 0; d < m && ok; ++d)
                        if (((down >> d) & 1) && !p.lt(d, u)) ok = false;
                }
                if (!ok) continue;
                SmallPoset q = p;
                q.n = m + 1;
                for (int d = 0; d < m; ++d)
                    if ((down >> d) & 1) q.less[d] |= static_cast<std::uint8_t>(1u << m);
                q.less[m] = static_cast<std::uint8_t>(up);
                grow(q);
            }
        }
    };
    grow(SmallPoset{});
}

/// Four distinct points forming two 2-chains with all cross pairs incomparable.
inline bool contains_two_plus_two(const SmallPoset& p)
{
    for (int a = 0; a < p.n; ++a)
        for (int b = 0; b < p.n; ++b)
            for (int c = 0; c < p.n; ++c)
                for (int d = 0; d < p.n; ++d) {
                    if (!p.lt(a, b) || !p.lt(c, d)) continue;
                    if (a == c || a == d || b == c || b == d) continue;
                    if (p.incomparable(a, c) && p.incomparable(a, d) && p.incomparable(b, c) && p.incomparable(b, d))
                        return true;
                }
    return false;
}

inline bool is_transitive_irreflexive(const std::vector<std::vector<bool>>& r)
{
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (r[i][i]) return false;
        for (std::size_t j = 0; j < n; ++j)
            if (r[i][j])
                for (std::size_t k = 0; k < n; ++k)
                    if (r[j][k] && !r[i][k]) return false;
    }
    return true;
}

/// Interval orders extending chains a1<..<ak (points 0..k-1) and b1<..<bk
/// (points k..2k-1), found by brute force over cross-relation thresholds:
/// a_i < b_j iff j >= above[i], b_j < a_i iff j <= below[i]. Each result is
/// a sorted pair list.
inline std::set<std::vector<std::pair<std::size_t, std::size_t>>> two_chain_interval_orders(int k)
{
    std::set<std::vector<std::pair<std::size_t, std::size_t>>> out;
    const int n = 2 * k;
    std::vector<int> above(k, 1), below(k, 0);
    std::function<void(int)> choose = [&](int i) {
        if (i == k) {
            std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
            for (int x = 0; x < k; ++x)
                for (int y = x + 1; y < k; ++y) r[x][y] = r[k + x][k + y] = true;
            for (int x = 0; x < k; ++x)
                for (int j = 1; j <= k; ++j) {
                    if (j >= above[x]) r[x][k + j - 1] = true;
                    if (j <= below[x]) r[k + j - 1][x] = true;
                }
            if (!is_transitive_irreflexive(r)) return;
            SmallPoset p;
            p.n = n;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (r[x][y]) p.less[x] |= static_cast<std::uint8_t>(1u << y);
            if (contains_two_plus_two(p)) return;
            out.insert(p.pairs());
            return;
        }
        for (int up = 1; up <= k + 1; ++up)
            for (int down = 0; down <= k; ++down) {
                above[i] = up;
                below[i] = down;
                choose(i + 1);
            }
    };
    choose(0);
    return out;
}

inline std::uint64_t binomial(unsigned n, unsigned k)
{
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct PlayResult {
    int read0 = 0, read1 = 0;
    int result0 = 0, result1 = 0;
};

inline int decide(int read, int pick)
{
    if (read == 0 || read == pick) return 0;
    return read < pick ? 1 : -1;
}

/// Straight simulation of one interleaved play. `schedule` lists which
/// process moves at each of the eight steps.
inline PlayResult simulate(const std::vector<int>& schedule, int pick0, int pick1)
{
    std::array<int, 2> pc{1, 1}, reg{0, 0}, pick{pick0, pick1}, read{0, 0}, result{0, 0};
    for (int p : schedule) {
        switch (pc[p]++) {
        case 1: break; // the pick is fixed up front
        case 2: reg[p] = pick[p]; break;
        case 3: read[p] = reg[1 - p]; break;
        case 4: result[p] = decide(read[p], pick[p]); break;
        }
    }
    return {read[0], read[1], result[0], result[1]};
}

/// Every length-8 schedule with four moves per process.
inline std::vector<std::vector<int>> all_schedules()
{
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) != 4) continue;
        std::vector<int> s;
        for (int i = 0; i < 8; ++i) s.push_back((mask >> i) & 1);
        out.push_back(s);
    }
    return out;
}

/// Values a read of a register with a single write `w` may return under the
/// regular specification, with initial value 0.
inline std::set<int> regular_read_values(bool write_before_read, bool read_before_write, int written)
{
    if (write_before_read) return {written};
    if (read_before_write) return {0};
    return {0, written};
}

} // namespace oracle
