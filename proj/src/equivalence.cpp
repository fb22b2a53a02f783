#include "walab/equivalence.hpp"

#include "walab/errors.hpp"

#include <deque>
#include <stdexcept>

namespace walab {

namespace {

using SparseVec = std::map<int, Rational>;

class Explorer {
public:
    Explorer(const LazyAutomaton& l, long long budget) : l_(l), budget_(budget) {}

    int discover(const std::string& q) {
        auto it = index_.find(q);
        if (it != index_.end()) return it->second;
        if (static_cast<long long>(names_.size()) >= budget_)
            throw resource_error("zeroness: state budget exceeded at " +
                                     std::to_string(names_.size() + 1) + " states",
                                 static_cast<long long>(names_.size() + 1));
        int id = static_cast<int>(names_.size());
        index_.emplace(q, id);
        names_.push_back(q);
        return id;
    }

    const std::vector<std::pair<int, Rational>>& successors(int state, int sym) {
        auto key = std::make_pair(state, sym);
        auto it = succ_cache_.find(key);
        if (it != succ_cache_.end()) return it->second;
        SparseVec acc;
        for (const auto& [t, w] : l_.next(names_[state], sym)) acc[discover(t)] += w;
        std::vector<std::pair<int, Rational>> out;
        for (const auto& [t, w] : acc)
            if (w != 0) out.push_back({t, w});
        return succ_cache_.emplace(key, std::move(out)).first->second;
    }

    Rational final_weight(int state) {
        auto it = final_cache_.find(state);
        if (it != final_cache_.end()) return it->second;
        Rational f = l_.final_weight(names_[state]);
        final_cache_.emplace(state, f);
        return f;
    }

    long long explored() const { return static_cast<long long>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    const LazyAutomaton& l_;
    long long budget_;
    std::map<std::string, int> index_;
    std::vector<std::string> names_;
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> succ_cache_;
    std::map<int, Rational> final_cache_;
};

}  // namespace

ZeronessVerdict zeroness(const LazyAutomaton& l, long long state_budget, ReachBasis* basis_out) {
    Explorer ex(l, state_budget);
    ReachBasis rb;
    ZeronessVerdict verdict;

    auto reduce = [&rb](SparseVec v) {
        for (std::size_t j = 0; j < rb.echelon.size(); ++j) {
            auto it = v.find(rb.pivot[j]);
            if (it == v.end()) continue;
            Rational f = it->second / rb.echelon[j].at(rb.pivot[j]);
            for (const auto& [k, c] : rb.echelon[j]) {
                Rational r = v[k] - f * c;
                if (r == 0)
                    v.erase(k);
                else
                    v[k] = r;
            }
        }
        return v;
    };

    auto value_of = [&ex](const SparseVec& v) {
        Rational s(0);
        for (const auto& [k, c] : v) s += c * ex.final_weight(k);
        return s;
    };

    std::deque<std::size_t> worklist;

    // Appends a basis vector unless dependent; returns false once a nonzero
    // value word is found (insertion order is military order, so the first
    // hit is the least witness).
    auto submit = [&](SparseVec raw, const Word& word) {
        SparseVec reduced = reduce(raw);
        if (reduced.empty()) return true;
        int piv = reduced.begin()->first;
        // Keep the echelon reduced: clear the new pivot everywhere else.
        for (std::size_t j = 0; j < rb.echelon.size(); ++j) {
            auto it = rb.echelon[j].find(piv);
            if (it == rb.echelon[j].end()) continue;
            Rational f = it->second / reduced.at(piv);
            for (const auto& [k, c] : reduced) {
                Rational r = rb.echelon[j][k] - f * c;
                if (r == 0)
                    rb.echelon[j].erase(k);
                else
                    rb.echelon[j][k] = r;
            }
        }
        Rational val = value_of(raw);
        rb.echelon.push_back(std::move(reduced));
        rb.raw.push_back(std::move(raw));
        rb.pivot.push_back(piv);
        rb.witnesses.push_back(word);
        worklist.push_back(rb.echelon.size() - 1);
        if (val != 0) {
            verdict.is_zero = false;
            verdict.witness = {word, val};
            return false;
        }
        return true;
    };

    SparseVec v0;
    for (const auto& [q, w] : l.initial) v0[ex.discover(q)] += w;
    for (auto it = v0.begin(); it != v0.end();)
        it = it->second == 0 ? v0.erase(it) : std::next(it);

    bool go = submit(std::move(v0), {});
    while (go && !worklist.empty()) {
        std::size_t b = worklist.front();
        worklist.pop_front();
        for (int sym = 0; sym < static_cast<int>(l.alphabet.size()) && go; ++sym) {
            SparseVec u;
            for (const auto& [s, c] : rb.raw[b])
                for (const auto& [t, w] : ex.successors(s, sym)) u[t] += c * w;
            for (auto it = u.begin(); it != u.end();)
                it = it->second == 0 ? u.erase(it) : std::next(it);
            if (u.empty()) continue;
            Word word = rb.witnesses[b];
            word.push_back(sym);
            go = submit(std::move(u), word);
        }
    }

    verdict.states_explored = ex.explored();
    if (basis_out) {
        rb.state_names = ex.names();
        *basis_out = std::move(rb);
    }
    return verdict;
}

ZeronessVerdict equivalent(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                           long long state_budget) {
    if (a1.alphabet != a2.alphabet) throw std::invalid_argument("equivalent: alphabet mismatch");
    return zeroness(lazy_difference(lazy_wrap(a1), lazy_wrap(a2)), state_budget);
}

}  // namespace walab
