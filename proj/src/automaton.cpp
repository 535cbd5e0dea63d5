#include "tentcode/automaton.hpp"

#include "tentcode/encoder.hpp"

#include "json.hpp"

#include <sstream>

namespace tentcode {

AutomatonTable::AutomatonTable(const TentParams& p) : params_(p) {
    Level& q0 = slot(0);
    q0.v = Rational(0);
    q0.u = Rational(1);
    q0.c = 0;
    published_.store(1, std::memory_order_release);
}

AutomatonTable::~AutomatonTable() {
    for (auto& b : blocks_) {
        Level* ptr = b.load(std::memory_order_relaxed);
        delete[] ptr;
    }
}

AutomatonTable::Level& AutomatonTable::slot(int k) {
    size_t bi = static_cast<size_t>(k) >> kBlockShift;
    if (bi >= kMaxBlocks) throw std::logic_error("automaton table: level cap exceeded");
    Level* block = blocks_[bi].load(std::memory_order_relaxed);
    if (!block) {
        block = new Level[kBlockSize];
        blocks_[bi].store(block, std::memory_order_relaxed);
    }
    return block[static_cast<size_t>(k) & (kBlockSize - 1)];
}

void AutomatonTable::ensure_level(int levels) {
    if (max_level() >= levels || complete_.load(std::memory_order_acquire)) return;
    std::lock_guard<std::mutex> lock(grow_mutex_);
    while (published_.load(std::memory_order_relaxed) <= levels &&
           !complete_.load(std::memory_order_relaxed))
        build_next_locked();
}

void AutomatonTable::build_next_locked() {
    int k = published_.load(std::memory_order_relaxed);  // the level being derived
    if (k == 1) {
        Level& l1 = slot(1);
        l1.v = Rational(0);
        l1.u = params_.half_mu();
        l1.c = 1;
        index_[{l1.v, l1.u}] = 1;
        Level& q0 = slot(0);
        q0.d0 = 1;
        q0.d1 = 1;
        published_.store(2, std::memory_order_release);
        return;
    }

    Level& prev = slot(k - 1);
    // The closed endpoint of level k-1 carries the kneading orbit; the next
    // chain segment is its image. The open endpoint seeds the other child.
    const Rational& closed_end = (prev.c == 1) ? prev.u : prev.v;
    const Rational& open_end = (prev.c == 1) ? prev.v : prev.u;
    if (closed_end == half())
        throw periodic_kneading_error("kneading orbit reached 1/2 at level " + std::to_string(k - 1));

    bool straddle = prev.v < half() && half() < prev.u;
    Rational nv, nu;
    int nc;
    if (straddle) {
        // Both children exist; the kneading point sits on the closed end,
        // whose sub-segment always continues on bit 0.
        nv = tent_apply(params_, closed_end);
        nu = params_.half_mu();
        nc = 0;
    } else if (prev.u <= half()) {
        // Increasing branch: the word can only continue with the parity bit.
        nv = tent_apply(params_, prev.v);
        nu = tent_apply(params_, prev.u);
        nc = prev.c;
    } else {
        // Decreasing branch: endpoints swap, parity flips.
        nv = tent_apply(params_, prev.u);
        nu = tent_apply(params_, prev.v);
        nc = 1 - prev.c;
    }

    int chain_target = k;
    bool closing = false;
    auto dup = index_.find({nv, nu});
    if (dup != index_.end()) {
        // The new segment already exists (possibly with mirrored closure):
        // the chain re-enters a known state and the table is finished.
        closing = true;
        closure_ = k - 1;
        chain_target = dup->second;
    } else {
        Level& lk = slot(k);
        lk.v = nv;
        lk.u = nu;
        lk.c = nc;
        index_[{nv, nu}] = k;
    }

    if (straddle) {
        // Resolve the bit-1 child against existing levels. It must already
        // be present (the new level itself in the rare symmetric case).
        auto it = index_.find({tent_apply(params_, open_end), params_.half_mu()});
        if (it == index_.end())
            throw periodic_kneading_error("missing sibling segment at level " + std::to_string(k - 1));
        prev.d0 = chain_target;
        prev.d1 = it->second;
    } else if (nc == 0) {
        prev.d0 = chain_target;
        prev.d1 = -1;
    } else {
        prev.d1 = chain_target;
        prev.d0 = -1;
    }

    if (closing)
        complete_.store(true, std::memory_order_release);
    else
        published_.store(k + 1, std::memory_order_release);
}

long AutomatonTable::max_endpoint_bits() const {
    long m = 0;
    for (int k = 0; k <= max_level(); ++k) {
        m = std::max(m, v(k).bit_size());
        m = std::max(m, u(k).bit_size());
    }
    return m;
}

std::optional<MachineState> try_step(const AutomatonTable& t, MachineState s, int bit) {
    if (s.l < 0) return MachineState{-1, bit};
    if (!t.delta_known(s.l)) return std::nullopt;
    int idx = (s.b == t.c(s.l)) ? bit : 1 - bit;
    return MachineState{t.delta(s.l, idx), bit};
}

MachineState step(AutomatonTable& t, MachineState s, int bit) {
    for (;;) {
        if (auto r = try_step(t, s, bit)) return *r;
        t.ensure_level(t.max_level() + 1);
    }
}

MemberResult is_member(AutomatonTable& t, const BitCode& code) {
    MemberResult r;
    r.level_trace.reserve(code.size());
    MachineState s;
    for (size_t i = 0; i < code.size(); ++i) {
        s = step(t, s, code[i]);
        r.level_trace.push_back(s.l);
        if (s.l < 0) return r;  // r.valid stays false
    }
    r.valid = true;
    return r;
}

MemberResult is_member(const TentParams& p, const BitCode& code) {
    AutomatonTable t(p);
    return is_member(t, code);
}

int k_statistic(AutomatonTable& t, const BitCode& code) {
    int k = 0;
    MachineState s;
    for (size_t i = 0; i < code.size(); ++i) {
        s = step(t, s, code[i]);
        if (s.l < 0) throw std::invalid_argument("k_statistic: code is not in the language");
        k = std::max(k, s.l);
    }
    return k;
}

int k_statistic(const TentParams& p, const BitCode& code) {
    AutomatonTable t(p);
    return k_statistic(t, code);
}

SegmentType state_segment(const AutomatonTable& t, MachineState s) {
    if (s.l < 1) throw std::invalid_argument("state_segment: no segment at level " + std::to_string(s.l));
    // b = c[l] selects the chain segment; otherwise the mirrored closure.
    bool chain_side = (s.b == t.c(s.l));
    bool closed_left = chain_side ? (t.c(s.l) == 0) : (t.c(s.l) == 1);
    return SegmentType{t.v(s.l), t.u(s.l), closed_left, s.l};
}

EdgeClass classify_edge(const AutomatonTable& t, int from_level, int idx) {
    if (!t.delta_known(from_level)) throw std::invalid_argument("classify_edge: level not built");
    int target = t.delta(from_level, idx);
    if (target == -1) return EdgeClass::Reject;
    if (target == from_level + 1 && t.c(target) == idx) return EdgeClass::Chain;
    if (from_level == 1 && target == 1 && idx == 1) return EdgeClass::Level1Loop;
    if (t.c(target) != idx && target >= 1 && 2 * (target - 1) <= from_level) return EdgeClass::Back;
    return EdgeClass::Violation;
}

namespace {

std::string node_name(const AutomatonTable& t, int level, int bit) {
    if (level < 0) return "rej";
    if (level == 0) return "q0";
    return (bit == t.c(level) ? "I" : "Ib") + std::to_string(level);
}

}  // namespace

std::string export_dot(const AutomatonTable& t) {
    int K = t.max_level();
    std::ostringstream os;
    os << "digraph tent_code_machine {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle fontsize=11];\n";
    os << "  q0 [label=\"q0\"];\n";
    for (int k = 1; k <= K; ++k) {
        os << "  I" << k << " [label=\"I" << k << "\"];\n";
        os << "  Ib" << k << " [label=\"" << "Ī" << k << "\"];\n";
    }
    bool any_reject = false;
    for (int k = 0; k <= K && !any_reject; ++k)
        if (t.delta_known(k) && (t.delta(k, 0) == -1 || t.delta(k, 1) == -1)) any_reject = true;
    if (any_reject) os << "  rej [label=\"" << "∅" << "\" shape=doublecircle];\n";

    auto edge = [&](int level, int side_bit, int consumed) {
        // side_bit distinguishes the chain side (b = c[level]) from the mirror
        int idx = (side_bit == t.c(level)) ? consumed : 1 - consumed;
        int target = t.delta(level, idx);
        os << "  " << node_name(t, level, side_bit) << " -> " << node_name(t, target, consumed)
           << " [label=\"" << consumed << "\"";
        if (target < 0) os << " style=dashed";
        os << "];\n";
    };

    if (t.delta_known(0)) {
        edge(0, 0, 0);
        edge(0, 0, 1);
    }
    for (int k = 1; k <= K; ++k) {
        if (!t.delta_known(k)) continue;
        edge(k, t.c(k), 0);
        edge(k, t.c(k), 1);
        edge(k, 1 - t.c(k), 0);
        edge(k, 1 - t.c(k), 1);
    }
    os << "}\n";
    return os.str();
}

std::string export_json(const AutomatonTable& t) {
    nlohmann::json j;
    j["mu"] = t.params().str();
    j["max_level"] = t.max_level();
    auto closure = t.closure_level();
    if (closure)
        j["closure_level"] = *closure;
    else
        j["closure_level"] = nullptr;
    nlohmann::json levels = nlohmann::json::array();
    for (int k = 0; k <= t.max_level(); ++k) {
        nlohmann::json row;
        row["k"] = k;
        row["v"] = t.v(k).str();
        row["u"] = t.u(k).str();
        row["c"] = t.c(k);
        if (t.delta_known(k)) {
            row["delta0"] = t.delta(k, 0);
            row["delta1"] = t.delta(k, 1);
        } else {
            row["delta0"] = nullptr;
            row["delta1"] = nullptr;
        }
        levels.push_back(std::move(row));
    }
    j["levels"] = std::move(levels);
    return j.dump(2);
}

}  // namespace tentcode
