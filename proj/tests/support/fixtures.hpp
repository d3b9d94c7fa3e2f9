#pragma once

// Conversions from oracle data to library types.

#include "kishon/folk.hpp"
#include "kishon/orders.hpp"
#include "support/oracles.hpp"

namespace fixtures {

inline kishon::orders::Precedence to_precedence(const oracle::SmallPoset& p)
{
    const auto pairs = p.pairs();
    return kishon::orders::Precedence::closure_of(static_cast<std::size_t>(p.n), pairs);
}

/// Bare structure with events e9_0..e9_{n-1} and the given precedence.
inline kishon::folk::FiniteStructure to_structure(const oracle::SmallPoset& p)
{
    kishon::folk::FiniteStructure s;
    for (int i = 0; i < p.n; ++i) {
        s.events.push_back({9, i});
        s.val[{9, i}] = 0;
    }
    for (auto [i, j] : p.pairs()) s.precedence.emplace(kishon::folk::EventId{9, int(i)}, kishon::folk::EventId{9, int(j)});
    return s;
}

inline kishon::folk::FiniteStructure to_structure(const kishon::orders::Precedence& order)
{
    kishon::folk::FiniteStructure s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        s.events.push_back({9, int(i)});
        s.val[{9, int(i)}] = 0;
    }
    for (auto [i, j] : order.pairs()) s.precedence.emplace(kishon::folk::EventId{9, int(i)}, kishon::folk::EventId{9, int(j)});
    return s;
}

} // namespace fixtures
