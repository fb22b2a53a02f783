#include "walab/lazy.hpp"

#include "walab/errors.hpp"

#include <deque>
#include <map>
#include <memory>
#include <stdexcept>

namespace walab {

std::string pack2(const std::string& a, const std::string& b) {
    return std::to_string(a.size()) + ":" + a + b;
}

std::pair<std::string, std::string> unpack2(const std::string& s) {
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unpack2: malformed state");
    std::size_t alen = std::stoul(s.substr(0, colon));
    std::string rest = s.substr(colon + 1);
    if (alen > rest.size()) throw std::invalid_argument("unpack2: malformed state");
    return {rest.substr(0, alen), rest.substr(alen)};
}

LazyAutomaton lazy_wrap(const WeightedAutomaton& a) {
    auto shared = std::make_shared<WeightedAutomaton>(a);
    // Pre-index rows and state names once; closures share the automaton.
    auto names = std::make_shared<std::map<std::string, int>>();
    for (int i = 0; i < shared->size(); ++i) (*names)[shared->states[i]] = i;
    auto rows = std::make_shared<std::vector<std::vector<std::vector<LazyAutomaton::Config>>>>();
    rows->resize(shared->alphabet.size(),
                 std::vector<std::vector<LazyAutomaton::Config>>(shared->size()));
    for (std::size_t s = 0; s < shared->alphabet.size(); ++s)
        for (const auto& [ij, v] : shared->trans[s].entries)
            (*rows)[s][ij.first].push_back({shared->states[ij.second], v});

    LazyAutomaton l;
    l.alphabet = shared->alphabet;
    for (const auto& [i, v] : shared->initial.entries) l.initial.push_back({shared->states[i], v});
    l.next = [shared, names, rows](const std::string& q, int sym) {
        auto it = names->find(q);
        if (it == names->end()) return std::vector<LazyAutomaton::Config>{};
        return (*rows)[sym][it->second];
    };
    l.final_weight = [shared, names](const std::string& q) {
        auto it = names->find(q);
        return it == names->end() ? Rational(0) : shared->final.get(it->second);
    };
    return l;
}

LazyAutomaton lazy_negate(const LazyAutomaton& l) {
    LazyAutomaton out = l;
    for (auto& [q, v] : out.initial) v = -v;
    return out;
}

LazyAutomaton lazy_sum(const LazyAutomaton& l1, const LazyAutomaton& l2) {
    if (l1.alphabet != l2.alphabet) throw std::invalid_argument("lazy_sum: alphabet mismatch");
    auto a = std::make_shared<LazyAutomaton>(l1);
    auto b = std::make_shared<LazyAutomaton>(l2);
    LazyAutomaton out;
    out.alphabet = l1.alphabet;
    for (const auto& [q, v] : a->initial) out.initial.push_back({"1" + q, v});
    for (const auto& [q, v] : b->initial) out.initial.push_back({"2" + q, v});
    out.next = [a, b](const std::string& q, int sym) {
        std::vector<LazyAutomaton::Config> res;
        const LazyAutomaton& side = q[0] == '1' ? *a : *b;
        for (auto& [t, v] : side.next(q.substr(1), sym)) res.push_back({q.substr(0, 1) + t, v});
        return res;
    };
    out.final_weight = [a, b](const std::string& q) {
        return (q[0] == '1' ? *a : *b).final_weight(q.substr(1));
    };
    return out;
}

LazyAutomaton lazy_difference(const LazyAutomaton& l1, const LazyAutomaton& l2) {
    return lazy_sum(l1, lazy_negate(l2));
}

LazyAutomaton lazy_product(const LazyAutomaton& l1, const LazyAutomaton& l2) {
    if (l1.alphabet != l2.alphabet) throw std::invalid_argument("lazy_product: alphabet mismatch");
    auto a = std::make_shared<LazyAutomaton>(l1);
    auto b = std::make_shared<LazyAutomaton>(l2);
    LazyAutomaton out;
    out.alphabet = l1.alphabet;
    for (const auto& [q1, v1] : a->initial)
        for (const auto& [q2, v2] : b->initial) out.initial.push_back({pack2(q1, q2), v1 * v2});
    out.next = [a, b](const std::string& q, int sym) {
        auto [q1, q2] = unpack2(q);
        std::vector<LazyAutomaton::Config> res;
        auto s1 = a->next(q1, sym);
        auto s2 = b->next(q2, sym);
        for (const auto& [t1, v1] : s1)
            for (const auto& [t2, v2] : s2) res.push_back({pack2(t1, t2), v1 * v2});
        return res;
    };
    out.final_weight = [a, b](const std::string& q) {
        auto [q1, q2] = unpack2(q);
        return a->final_weight(q1) * b->final_weight(q2);
    };
    return out;
}

Rational lazy_evaluate(const LazyAutomaton& l, const Word& w) {
    std::map<std::string, Rational> v;
    for (const auto& [q, x] : l.initial) v[q] += x;
    for (int sym : w) {
        std::map<std::string, Rational> nxt;
        for (const auto& [q, x] : v) {
            if (x == 0) continue;
            for (const auto& [t, y] : l.next(q, sym)) nxt[t] += x * y;
        }
        v = std::move(nxt);
    }
    Rational total(0);
    for (const auto& [q, x] : v) total += x * l.final_weight(q);
    return total;
}

WeightedAutomaton materialize(const LazyAutomaton& l, long long state_budget) {
    std::map<std::string, int> index;
    std::vector<std::string> order;
    std::deque<std::string> queue;
    auto discover = [&](const std::string& q) {
        if (index.count(q)) return;
        if (static_cast<long long>(order.size()) >= state_budget)
            throw resource_error("materialize: state budget exceeded at " +
                                     std::to_string(order.size() + 1) + " states",
                                 static_cast<long long>(order.size() + 1));
        index[q] = static_cast<int>(order.size());
        order.push_back(q);
        queue.push_back(q);
    };
    for (const auto& [q, v] : l.initial) {
        (void)v;
        discover(q);
    }
    // edges[sym] maps (from, to) to accumulated weight.
    std::vector<std::map<std::pair<int, int>, Rational>> edges(l.alphabet.size());
    while (!queue.empty()) {
        std::string q = queue.front();
        queue.pop_front();
        int qi = index[q];
        for (std::size_t sym = 0; sym < l.alphabet.size(); ++sym) {
            for (const auto& [t, v] : l.next(q, static_cast<int>(sym))) {
                discover(t);
                edges[sym][{qi, index[t]}] += v;
            }
        }
    }
    WeightedAutomaton out;
    out.alphabet = l.alphabet;
    out.states = order;
    const int n = static_cast<int>(order.size());
    out.initial = RatVector(n);
    out.final = RatVector(n);
    for (const auto& [q, v] : l.initial) {
        Rational s = out.initial.get(index[q]) + v;
        out.initial.set(index[q], s);
    }
    for (int i = 0; i < n; ++i) {
        Rational f = l.final_weight(order[i]);
        if (f != 0) out.final.entries[i] = f;
    }
    for (std::size_t sym = 0; sym < l.alphabet.size(); ++sym) {
        RatMatrix m(n, n);
        for (const auto& [ij, v] : edges[sym])
            if (v != 0) m.entries[ij] = v;
        out.trans.push_back(std::move(m));
    }
    return out;
}

}  // namespace walab
