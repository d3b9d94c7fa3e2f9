#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kishon {

/// Comparison operators shared by every formula language in the toolkit.
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

constexpr bool compare(int lhs, CmpOp op, int rhs) noexcept
{
    switch (op) {
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Ge: return lhs >= rhs;
    }
    return false;
}

constexpr std::string_view symbol(CmpOp op) noexcept
{
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

} // namespace kishon
