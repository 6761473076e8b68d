#include "stopmove/error.hpp"
#include "stopmove/resm.hpp"

namespace stopmove {

int Automaton::add_state() {
    epsilon_.emplace_back();
    consume_.emplace_back();
    return int(epsilon_.size()) - 1;
}

Automaton::Fragment Automaton::build(const Pattern& p) {
    switch (p.kind) {
        case Pattern::Kind::dim: {
            const int s = add_state();
            const int a = add_state();
            predicates_.push_back({ctx_->dimension(p.dim).schema().name,
                                   p.condition ? &*p.condition : nullptr});
            consume_[s].push_back({int(predicates_.size()) - 1, a});
            return {s, a};
        }
        case Pattern::Kind::epsilon: {
            const int s = add_state();
            const int a = add_state();
            epsilon_[s].push_back(a);
            return {s, a};
        }
        case Pattern::Kind::wildcard: {
            // Any number of stops, zero included.
            const int s = add_state();
            const int a = add_state();
            consume_[s].push_back({-1, s});
            epsilon_[s].push_back(a);
            return {s, a};
        }
        case Pattern::Kind::concat: {
            Fragment whole = build(p.children.front());
            for (std::size_t k = 1; k < p.children.size(); ++k) {
                const Fragment next = build(p.children[k]);
                epsilon_[whole.accept].push_back(next.start);
                whole.accept = next.accept;
            }
            return whole;
        }
        case Pattern::Kind::star: {
            const int s = add_state();
            const int a = add_state();
            const Fragment inner = build(p.children.front());
            epsilon_[s].push_back(inner.start);
            epsilon_[s].push_back(a);
            epsilon_[inner.accept].push_back(inner.start);
            epsilon_[inner.accept].push_back(a);
            return {s, a};
        }
    }
    throw DomainError("unknown pattern node");
}

Automaton Automaton::compile(const Pattern& p, const OlapContext& ctx) {
    bind(p, ctx);
    Automaton a;
    a.pattern_ = std::make_shared<const Pattern>(p);
    a.ctx_ = &ctx;
    const Fragment f = a.build(*a.pattern_);
    a.start_ = f.start;
    a.accept_ = f.accept;
    return a;
}

void Automaton::close(std::vector<int>& states, std::vector<char>& mark) const {
    for (std::size_t k = 0; k < states.size(); ++k)
        for (int next : epsilon_[std::size_t(states[k])])
            if (!mark[std::size_t(next)]) {
                mark[std::size_t(next)] = 1;
                states.push_back(next);
            }
}

bool Automaton::test(int predicate, const StopEvent& e, std::vector<signed char>& cache) const {
    if (predicate < 0) return true;
    signed char& slot = cache[std::size_t(predicate)];
    if (slot < 0) {
        const Predicate& pr = predicates_[std::size_t(predicate)];
        bool ok = pr.dimension == e.dimension;
        if (ok && pr.condition) ok = eval_cond(*pr.condition, e, *ctx_);
        slot = ok ? 1 : 0;
    }
    return slot == 1;
}

void Automaton::step(const std::vector<int>& from, const StopEvent& e, std::vector<int>& to,
                     std::vector<char>& mark) const {
    std::vector<signed char> cache(predicates_.size(), -1);
    for (int s : from)
        for (const Transition& t : consume_[std::size_t(s)])
            if (!mark[std::size_t(t.target)] && test(t.predicate, e, cache)) {
                mark[std::size_t(t.target)] = 1;
                to.push_back(t.target);
            }
}

bool Automaton::accepts(std::span<const StopEvent> seq) const {
    std::vector<char> mark(state_count(), 0);
    std::vector<int> cur{start_};
    mark[std::size_t(start_)] = 1;
    close(cur, mark);
    for (const StopEvent& e : seq) {
        std::vector<int> next;
        std::fill(mark.begin(), mark.end(), 0);
        step(cur, e, next, mark);
        close(next, mark);
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    return mark[std::size_t(accept_)] != 0;
}

bool Automaton::matches(std::span<const StopEvent> seq) const {
    std::vector<char> mark(state_count(), 0);
    std::vector<int> cur;
    auto restart = [&](std::vector<int>& states) {
        // A match may begin at the current position.
        if (!mark[std::size_t(start_)]) {
            mark[std::size_t(start_)] = 1;
            states.push_back(start_);
        }
        close(states, mark);
    };
    restart(cur);
    if (mark[std::size_t(accept_)]) return true;
    for (const StopEvent& e : seq) {
        std::vector<int> next;
        std::fill(mark.begin(), mark.end(), 0);
        step(cur, e, next, mark);
        restart(next);
        if (mark[std::size_t(accept_)]) return true;
        cur = std::move(next);
    }
    return false;
}

std::vector<ObjectId> matching_oids(const SmMoft& sm, const Pattern& p, const OlapContext& ctx) {
    const Automaton a = Automaton::compile(p, ctx);
    std::vector<ObjectId> out;
    for (const ObjectId& oid : sm.oids()) {
        const auto seq = unfold(build_sm_graph(sm, oid, ctx));
        if (a.matches(seq)) out.push_back(oid);
    }
    return out;
}

}  // namespace stopmove
