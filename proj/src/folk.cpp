#include "kishon/folk.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

namespace kishon::folk {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Event labels

std::string EventId::label() const
{
    if (process == 0) return "a" + std::to_string(index);
    if (process == 1) return "b" + std::to_string(index);
    return "e" + std::to_string(process) + "_" + std::to_string(index);
}

namespace {

int parse_int(std::string_view text, std::string_view whole)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad event label '" + std::string(whole) + "'");
    return value;
}

} // namespace

EventId EventId::parse(std::string_view text)
{
    if (text.size() < 2) throw std::invalid_argument("bad event label '" + std::string(text) + "'");
    if (text[0] == 'a') return {0, parse_int(text.substr(1), text)};
    if (text[0] == 'b') return {1, parse_int(text.substr(1), text)};
    if (text[0] == 'e') {
        auto sep = text.find('_');
        if (sep == std::string_view::npos)
            throw std::invalid_argument("bad event label '" + std::string(text) + "'");
        return {parse_int(text.substr(1, sep - 1), text), parse_int(text.substr(sep + 1), text)};
    }
    throw std::invalid_argument("bad event label '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Structures

bool FiniteStructure::has_event(const EventId& e) const
{
    return std::find(events.begin(), events.end(), e) != events.end();
}

bool FiniteStructure::precedes(const EventId& lhs, const EventId& rhs) const
{
    return precedence.count({lhs, rhs}) != 0;
}

bool FiniteStructure::holds(std::string_view predicate, const EventId& e) const
{
    auto it = predicates.find(std::string(predicate));
    return it != predicates.end() && it->second.count(e) != 0;
}

Signature signature_of(const FiniteStructure& s)
{
    Signature sig;
    for (const auto& [name, _] : s.predicates) sig.event_predicates.insert(name);
    for (const auto& [name, _] : s.constants) sig.data_constants.insert(name);
    return sig;
}

std::vector<std::string> check_structure(const FiniteStructure& s)
{
    std::vector<std::string> problems;
    std::set<EventId> seen;
    for (const auto& e : s.events)
        if (!seen.insert(e).second) problems.push_back("duplicate event " + e.label());

    if (s.data_min > s.data_max) problems.push_back("empty data universe");

    for (const auto& [name, members] : s.predicates)
        for (const auto& e : members)
            if (!seen.count(e)) problems.push_back("predicate " + name + " holds of unknown event " + e.label());

    for (const auto& [lhs, rhs] : s.precedence)
        if (!seen.count(lhs) || !seen.count(rhs))
            problems.push_back("precedence pair (" + lhs.label() + "," + rhs.label() + ") names unknown event");

    for (const auto& e : seen) {
        auto it = s.val.find(e);
        if (it == s.val.end()) {
            problems.push_back("val not total: missing " + e.label());
        } else if (it->second < s.data_min || it->second > s.data_max) {
            problems.push_back("val(" + e.label() + ") outside data universe");
        }
    }
    for (const auto& [e, _] : s.val)
        if (!seen.count(e)) problems.push_back("val defined on unknown event " + e.label());
    return problems;
}

bool is_system_execution(const FiniteStructure& s)
{
    const auto& ev = s.events;
    for (const auto& a : ev)
        if (s.precedes(a, a)) return false;
    for (const auto& a : ev)
        for (const auto& b : ev) {
            if (!s.precedes(a, b)) continue;
            for (const auto& c : ev)
                if (s.precedes(b, c) && !s.precedes(a, c)) return false;
        }
    for (const auto& a : ev)
        for (const auto& b : ev) {
            if (!s.precedes(a, b)) continue;
            for (const auto& c : ev) {
                if (s.precedes(c, b)) continue;
                for (const auto& d : ev)
                    if (s.precedes(c, d) && !s.precedes(a, d)) return false;
            }
        }
    return true;
}

FiniteStructure reduct(const FiniteStructure& s, std::string_view sort_predicate)
{
    FiniteStructure r;
    r.data_min = s.data_min;
    r.data_max = s.data_max;
    r.constants = s.constants;
    std::set<EventId> kept;
    for (const auto& e : s.events)
        if (s.holds(sort_predicate, e)) {
            r.events.push_back(e);
            kept.insert(e);
        }
    for (const auto& [name, members] : s.predicates) {
        auto& dst = r.predicates[name];
        for (const auto& e : members)
            if (kept.count(e)) dst.insert(e);
    }
    for (const auto& pair : s.precedence)
        if (kept.count(pair.first) && kept.count(pair.second)) r.precedence.insert(pair);
    for (const auto& [e, v] : s.val)
        if (kept.count(e)) r.val.emplace(e, v);
    return r;
}

json to_json(const FiniteStructure& s)
{
    std::vector<EventId> sorted = s.events;
    std::sort(sorted.begin(), sorted.end());
    json events = json::array();
    for (const auto& e : sorted) events.push_back(e.label());

    json precedence = json::array();
    for (const auto& [lhs, rhs] : s.precedence) precedence.push_back(json::array({lhs.label(), rhs.label()}));

    json predicates = json::object();
    for (const auto& [name, members] : s.predicates) {
        json list = json::array();
        for (const auto& e : members) list.push_back(e.label());
        predicates[name] = std::move(list);
    }

    json val = json::object();
    for (const auto& [e, v] : s.val) val[e.label()] = v;

    json constants = json::object();
    for (const auto& [name, v] : s.constants) constants[name] = v;

    return json{{"events", std::move(events)},
                {"data", json::array({s.data_min, s.data_max})},
                {"precedence", std::move(precedence)},
                {"predicates", std::move(predicates)},
                {"val", std::move(val)},
                {"constants", std::move(constants)}};
}

FiniteStructure structure_from_json(const json& doc)
{
    FiniteStructure s;
    for (const auto& label : doc.at("events")) s.events.push_back(EventId::parse(label.get<std::string>()));
    const auto& data = doc.at("data");
    s.data_min = data.at(0).get<int>();
    s.data_max = data.at(1).get<int>();
    for (const auto& pair : doc.at("precedence"))
        s.precedence.emplace(EventId::parse(pair.at(0).get<std::string>()),
                             EventId::parse(pair.at(1).get<std::string>()));
    for (const auto& [name, members] : doc.at("predicates").items()) {
        auto& dst = s.predicates[name];
        for (const auto& label : members) dst.insert(EventId::parse(label.get<std::string>()));
    }
    for (const auto& [label, v] : doc.at("val").items()) s.val[EventId::parse(label)] = v.get<int>();
    for (const auto& [name, v] : doc.at("constants").items()) s.constants[name] = v.get<int>();
    return s;
}

// ---------------------------------------------------------------------------
// Formula construction

using Kind = Formula::Node::Kind;

namespace {

Formula make(Formula::Node node)
{
    return Formula(std::make_shared<const Formula::Node>(std::move(node)));
}

std::string term_string(const DataTerm& t)
{
    switch (t.kind) {
    case DataTerm::Kind::ValOf: return "Val(" + t.name + ")";
    case DataTerm::Kind::Constant: return t.name;
    case DataTerm::Kind::Literal: return std::to_string(t.literal);
    }
    return "?";
}

void write_formula(std::ostream& out, const Formula& f)
{
    const auto& n = f.node();
    auto join = [&](std::string_view sep) {
        out << '(';
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) out << sep;
            write_formula(out, n.children[i]);
        }
        out << ')';
    };
    switch (n.kind) {
    case Kind::True: out << "true"; break;
    case Kind::False: out << "false"; break;
    case Kind::Pred: out << n.name << '(' << n.lhs_var << ')'; break;
    case Kind::Precedes: out << n.lhs_var << " < " << n.rhs_var; break;
    case Kind::SameEvent: out << n.lhs_var << " = " << n.rhs_var; break;
    case Kind::Compare:
        out << term_string(n.lhs_term) << ' ' << symbol(n.op) << ' ' << term_string(n.rhs_term);
        break;
    case Kind::Not:
        out << "!(";
        write_formula(out, n.children[0]);
        out << ')';
        break;
    case Kind::And: join(" & "); break;
    case Kind::Or: join(" | "); break;
    case Kind::Implies: join(" -> "); break;
    case Kind::ForAll:
    case Kind::Exists:
        out << (n.kind == Kind::ForAll ? "forall " : "exists ") << n.name << ". ";
        write_formula(out, n.children[0]);
        break;
    }
}

} // namespace

Formula::Formula() : node_(std::make_shared<const Node>()) {}

std::string Formula::to_string() const
{
    std::ostringstream out;
    write_formula(out, *this);
    return out.str();
}

namespace fo {

Formula truth() { return make({}); }

Formula falsity()
{
    Formula::Node n;
    n.kind = Kind::False;
    return make(std::move(n));
}

Formula pred(std::string name, std::string var)
{
    Formula::Node n;
    n.kind = Kind::Pred;
    n.name = std::move(name);
    n.lhs_var = std::move(var);
    return make(std::move(n));
}

Formula prec(std::string lhs, std::string rhs)
{
    Formula::Node n;
    n.kind = Kind::Precedes;
    n.lhs_var = std::move(lhs);
    n.rhs_var = std::move(rhs);
    return make(std::move(n));
}

Formula same(std::string lhs, std::string rhs)
{
    Formula::Node n;
    n.kind = Kind::SameEvent;
    n.lhs_var = std::move(lhs);
    n.rhs_var = std::move(rhs);
    return make(std::move(n));
}

Formula concurrent(const std::string& lhs, const std::string& rhs)
{
    return !prec(lhs, rhs) && !prec(rhs, lhs);
}

DataTerm val(std::string var) { return {DataTerm::Kind::ValOf, std::move(var), 0}; }
DataTerm constant(std::string name) { return {DataTerm::Kind::Constant, std::move(name), 0}; }
DataTerm lit(int value) { return {DataTerm::Kind::Literal, {}, value}; }

Formula cmp(DataTerm lhs, CmpOp op, DataTerm rhs)
{
    Formula::Node n;
    n.kind = Kind::Compare;
    n.lhs_term = std::move(lhs);
    n.rhs_term = std::move(rhs);
    n.op = op;
    return make(std::move(n));
}

Formula operator!(const Formula& f)
{
    Formula::Node n;
    n.kind = Kind::Not;
    n.children = {f};
    return make(std::move(n));
}

Formula operator&&(const Formula& lhs, const Formula& rhs) { return all_of({lhs, rhs}); }
Formula operator||(const Formula& lhs, const Formula& rhs) { return any_of({lhs, rhs}); }

Formula implies(const Formula& lhs, const Formula& rhs)
{
    Formula::Node n;
    n.kind = Kind::Implies;
    n.children = {lhs, rhs};
    return make(std::move(n));
}

namespace {

Formula flatten(Kind kind, std::vector<Formula> parts)
{
    Formula::Node n;
    n.kind = kind;
    for (auto& p : parts) {
        if (p.node().kind == kind) {
            for (const auto& c : p.node().children) n.children.push_back(c);
        } else {
            n.children.push_back(std::move(p));
        }
    }
    return make(std::move(n));
}

Formula quantify(Kind kind, std::initializer_list<std::string> vars, const Formula& body)
{
    Formula result = body;
    for (auto it = std::rbegin(vars); it != std::rend(vars); ++it) {
        Formula::Node n;
        n.kind = kind;
        n.name = *it;
        n.children = {result};
        result = make(std::move(n));
    }
    return result;
}

} // namespace

Formula all_of(std::vector<Formula> parts) { return flatten(Kind::And, std::move(parts)); }
Formula any_of(std::vector<Formula> parts) { return flatten(Kind::Or, std::move(parts)); }

Formula forall(std::initializer_list<std::string> vars, const Formula& body)
{
    return quantify(Kind::ForAll, vars, body);
}

Formula exists(std::initializer_list<std::string> vars, const Formula& body)
{
    return quantify(Kind::Exists, vars, body);
}

} // namespace fo

Formula russell_wiener_sentence()
{
    using namespace fo;
    return forall({"a", "b", "c", "d"},
                  implies(prec("a", "b") && prec("c", "d") && !prec("c", "b"), prec("a", "d")));
}

Formula strict_partial_order_sentence()
{
    using namespace fo;
    return forall({"a"}, !prec("a", "a")) &&
           forall({"a", "b", "c"}, implies(prec("a", "b") && prec("b", "c"), prec("a", "c")));
}

// ---------------------------------------------------------------------------
// Evaluation
//
// Formulas are compiled against an index view of the structure: variables
// become slots, predicate and constant names are resolved once.

namespace {

struct IndexedStructure {
    std::size_t n = 0;
    std::vector<char> prec;                 // n*n
    std::vector<std::vector<char>> preds;   // per predicate, n flags
    std::map<std::string, std::size_t> pred_index;
    std::vector<std::optional<int>> val;

    explicit IndexedStructure(const FiniteStructure& s) : n(s.events.size()), prec(n * n, 0), val(n)
    {
        std::map<EventId, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) index.emplace(s.events[i], i);
        for (const auto& [lhs, rhs] : s.precedence) {
            auto l = index.find(lhs), r = index.find(rhs);
            if (l != index.end() && r != index.end()) prec[l->second * n + r->second] = 1;
        }
        for (const auto& [name, members] : s.predicates) {
            std::vector<char> flags(n, 0);
            for (const auto& e : members)
                if (auto it = index.find(e); it != index.end()) flags[it->second] = 1;
            pred_index.emplace(name, preds.size());
            preds.push_back(std::move(flags));
        }
        for (const auto& [e, v] : s.val)
            if (auto it = index.find(e); it != index.end()) val[it->second] = v;
    }
};

struct CTerm {
    bool is_val = false;
    int slot = 0;
    int value = 0;
};

struct CNode {
    Kind kind = Kind::True;
    int pred = 0;
    int a = 0, b = 0; // slots; for quantifiers `a` is the bound slot
    CTerm lhs, rhs;
    CmpOp op = CmpOp::Eq;
    std::vector<CNode> children;
};

class Compiler {
public:
    Compiler(const FiniteStructure& s, const IndexedStructure& ix) : s_(s), ix_(ix) {}

    int bind_free(const std::string& var)
    {
        int slot = next_slot_++;
        scope_.emplace_back(var, slot);
        return slot;
    }

    int slot_count() const { return next_slot_; }

    CNode compile(const Formula& f)
    {
        const auto& n = f.node();
        CNode c;
        c.kind = n.kind;
        switch (n.kind) {
        case Kind::True:
        case Kind::False: break;
        case Kind::Pred: {
            auto it = ix_.pred_index.find(n.name);
            if (it == ix_.pred_index.end()) throw EvaluationError("predicate '" + n.name + "' not in signature");
            c.pred = static_cast<int>(it->second);
            c.a = lookup(n.lhs_var);
            break;
        }
        case Kind::Precedes:
        case Kind::SameEvent:
            c.a = lookup(n.lhs_var);
            c.b = lookup(n.rhs_var);
            break;
        case Kind::Compare:
            c.lhs = term(n.lhs_term);
            c.rhs = term(n.rhs_term);
            c.op = n.op;
            break;
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            for (const auto& child : n.children) c.children.push_back(compile(child));
            break;
        case Kind::ForAll:
        case Kind::Exists: {
            c.a = next_slot_++;
            scope_.emplace_back(n.name, c.a);
            c.children.push_back(compile(n.children[0]));
            scope_.pop_back();
            break;
        }
        }
        return c;
    }

private:
    int lookup(const std::string& var) const
    {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == var) return it->second;
        throw EvaluationError("unbound variable '" + var + "'");
    }

    CTerm term(const DataTerm& t) const
    {
        switch (t.kind) {
        case DataTerm::Kind::ValOf: return {true, lookup(t.name), 0};
        case DataTerm::Kind::Constant: {
            auto it = s_.constants.find(t.name);
            if (it == s_.constants.end()) throw EvaluationError("constant '" + t.name + "' not in signature");
            return {false, 0, it->second};
        }
        case DataTerm::Kind::Literal: return {false, 0, t.literal};
        }
        return {};
    }

    const FiniteStructure& s_;
    const IndexedStructure& ix_;
    std::vector<std::pair<std::string, int>> scope_;
    int next_slot_ = 0;
};

class Evaluator {
public:
    Evaluator(const IndexedStructure& ix, std::vector<std::size_t> env) : ix_(ix), env_(std::move(env)) {}

    bool eval(const CNode& c)
    {
        switch (c.kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Pred: return ix_.preds[c.pred][env_[c.a]] != 0;
        case Kind::Precedes: return ix_.prec[env_[c.a] * ix_.n + env_[c.b]] != 0;
        case Kind::SameEvent: return env_[c.a] == env_[c.b];
        case Kind::Compare: return compare(value(c.lhs), c.op, value(c.rhs));
        case Kind::Not: return !eval(c.children[0]);
        case Kind::And:
            for (const auto& child : c.children)
                if (!eval(child)) return false;
            return true;
        case Kind::Or:
            for (const auto& child : c.children)
                if (eval(child)) return true;
            return false;
        case Kind::Implies: return !eval(c.children[0]) || eval(c.children[1]);
        case Kind::ForAll:
            for (std::size_t e = 0; e < ix_.n; ++e) {
                env_[c.a] = e;
                if (!eval(c.children[0])) return false;
            }
            return true;
        case Kind::Exists:
            for (std::size_t e = 0; e < ix_.n; ++e) {
                env_[c.a] = e;
                if (eval(c.children[0])) return true;
            }
            return false;
        }
        return false;
    }

private:
    int value(const CTerm& t) const
    {
        if (!t.is_val) return t.value;
        const auto& v = ix_.val[env_[t.slot]];
        if (!v) throw EvaluationError("Val undefined on an event");
        return *v;
    }

    const IndexedStructure& ix_;
    std::vector<std::size_t> env_;
};

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out)
{
    const auto& n = f.node();
    auto use = [&](const std::string& v) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
    };
    switch (n.kind) {
    case Kind::Pred: use(n.lhs_var); break;
    case Kind::Precedes:
    case Kind::SameEvent:
        use(n.lhs_var);
        use(n.rhs_var);
        break;
    case Kind::Compare:
        if (n.lhs_term.kind == DataTerm::Kind::ValOf) use(n.lhs_term.name);
        if (n.rhs_term.kind == DataTerm::Kind::ValOf) use(n.rhs_term.name);
        break;
    case Kind::ForAll:
    case Kind::Exists:
        bound.push_back(n.name);
        collect_free(n.children[0], bound, out);
        bound.pop_back();
        break;
    default:
        for (const auto& c : n.children) collect_free(c, bound, out);
    }
}

} // namespace

std::set<std::string> free_variables(const Formula& f)
{
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

bool evaluate(const FiniteStructure& s, const Formula& f, const Assignment& env)
{
    IndexedStructure ix(s);
    Compiler compiler(s, ix);

    std::vector<std::size_t> initial;
    for (const auto& [var, event] : env) {
        auto it = std::find(s.events.begin(), s.events.end(), event);
        if (it == s.events.end()) throw EvaluationError("assignment maps '" + var + "' outside the structure");
        compiler.bind_free(var);
        initial.push_back(static_cast<std::size_t>(it - s.events.begin()));
    }
    CNode root = compiler.compile(f);
    initial.resize(static_cast<std::size_t>(compiler.slot_count()), 0);
    return Evaluator(ix, std::move(initial)).eval(root);
}

} // namespace kishon::folk
