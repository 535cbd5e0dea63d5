#pragma once

#include "tentcode/bitcode.hpp"
#include "tentcode/oracle.hpp"
#include "tentcode/tent.hpp"

#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tentcode {

// Raised when the kneading orbit hits 1/2, which would make the chain
// recursion ill-defined. Cannot happen for a rational slope in lowest terms
// (the orbit numerators stay coprime to d), but the construction checks.
struct periodic_kneading_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The segment-type transition table. Level k holds the endpoints (v, u) and
// closure bit c of the k-th chain segment, plus the two outgoing transitions
// delta[k][0], delta[k][1] (target level, or -1 for reject) once level k+1
// has been derived. Level 0 is the initial whole-interval state.
//
// Levels are append-only: once published they never change, so readers may
// hold references across growth. Growth serializes on an internal mutex and
// publishes through an atomic counter; concurrent readers of published
// levels need no lock. Storage is a paged arena so publication never moves
// existing levels.
class AutomatonTable {
public:
    static constexpr int kUnset = -2;

    explicit AutomatonTable(const TentParams& p);
    AutomatonTable(const TentParams& p, int levels) : AutomatonTable(p) { ensure_level(levels); }
    ~AutomatonTable();

    AutomatonTable(const AutomatonTable&) = delete;
    AutomatonTable& operator=(const AutomatonTable&) = delete;

    const TentParams& params() const { return params_; }

    // Highest level built so far (0 = just the initial state).
    int max_level() const { return published_.load(std::memory_order_acquire) - 1; }

    const Rational& v(int k) const { return at(k).v; }
    const Rational& u(int k) const { return at(k).u; }
    int c(int k) const { return at(k).c; }

    // delta is defined for levels whose successor has been derived.
    bool delta_known(int k) const {
        if (complete_.load(std::memory_order_acquire)) return k <= max_level();
        return k < max_level();
    }
    int delta(int k, int bit) const { return bit == 0 ? at(k).d0 : at(k).d1; }

    // Grows the table until max_level() >= levels, or until the segment
    // sequence closes on itself (closure_level set), whichever comes first.
    void ensure_level(int levels);

    // Set when a newly derived segment duplicates an existing level; the
    // table is then complete and stops growing.
    std::optional<int> closure_level() const {
        if (!complete_.load(std::memory_order_acquire)) return std::nullopt;
        return closure_;
    }

    long total_entries() const { return published_.load(std::memory_order_acquire); }
    long max_endpoint_bits() const;

private:
    struct Level {
        Rational v, u;
        int c = 0;
        int d0 = kUnset;
        int d1 = kUnset;
    };

    static constexpr size_t kBlockShift = 9;  // 512 levels per block
    static constexpr size_t kBlockSize = size_t{1} << kBlockShift;
    static constexpr size_t kMaxBlocks = 8192;

    const Level& at(int k) const {
        return blocks_[static_cast<size_t>(k) >> kBlockShift]
            .load(std::memory_order_relaxed)[static_cast<size_t>(k) & (kBlockSize - 1)];
    }
    Level& slot(int k);  // writer side; allocates the block if needed
    void build_next_locked();

    TentParams params_;
    std::array<std::atomic<Level*>, kMaxBlocks> blocks_{};
    std::atomic<int> published_{0};
    std::atomic<bool> complete_{false};
    std::optional<int> closure_;
    std::map<std::pair<Rational, Rational>, int> index_;  // (v,u) -> level, writer-only
    std::mutex grow_mutex_;
};

inline AutomatonTable build_table(const TentParams& p, int levels) {
    return AutomatonTable(p, levels);
}

// Machine state: level l (-1 reject, 0 initial) plus the last consumed bit b.
// The pair decodes to the chain segment at level l when b = c[l], and to its
// mirror (opposite closure) otherwise.
struct MachineState {
    int l = 0;
    int b = 0;
    friend bool operator==(const MachineState& a, const MachineState& s) {
        return a.l == s.l && a.b == s.b;
    }
};

// One transition. Returns nullopt when the table has not been built far
// enough (caller grows and retries); a reject state absorbs.
std::optional<MachineState> try_step(const AutomatonTable& t, MachineState s, int bit);

// One transition with on-demand growth.
MachineState step(AutomatonTable& t, MachineState s, int bit);

struct MemberResult {
    bool valid = false;
    std::vector<int> level_trace;  // level after each consumed bit; -1 terminates
};

MemberResult is_member(AutomatonTable& t, const BitCode& code);
MemberResult is_member(const TentParams& p, const BitCode& code);

// Max level over the trace of a valid code. Invalid codes are an error.
int k_statistic(AutomatonTable& t, const BitCode& code);
int k_statistic(const TentParams& p, const BitCode& code);

// Decode a machine state to the segment it represents (levels >= 1).
SegmentType state_segment(const AutomatonTable& t, MachineState s);

// Structural classification of a built transition delta[from][idx], where
// idx is the consumed bit as seen from the chain (non-mirrored) side.
//   Chain:      to level from+1, closure parity preserved
//   Back:       to a level t <= from/2 + 1, parity flipped
//   Reject:     -1
//   Level1Loop: the self-loop delta[1][1] = 1; its parity is preserved
//               because v[1] = 0 is a fixed point of the map, so it fits
//               neither the chain nor the back pattern. Exists for every
//               slope and only at level 1.
enum class EdgeClass { Chain, Back, Reject, Level1Loop, Violation };
EdgeClass classify_edge(const AutomatonTable& t, int from_level, int idx);

// Deterministic GraphViz rendering: nodes q0, Ik, mirrored Ik, and a reject
// node when some built transition rejects; edges labeled by consumed bit.
std::string export_dot(const AutomatonTable& t);

// JSON dump: {mu, max_level, closure_level, levels: [{k, v, u, c, delta0, delta1}]}
std::string export_json(const AutomatonTable& t);

}  // namespace tentcode
