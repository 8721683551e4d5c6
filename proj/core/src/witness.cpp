#include "lcs/witness.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <deque>
#include <limits>
#include <set>
#include <unordered_map>

#include "digraph.hpp"

namespace lcs {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSat - b ? kSat : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

// Falling factorial L * (L-1) * ... (n factors).
std::uint64_t injective_words(std::uint64_t states, std::uint32_t n) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < n; ++i) r = sat_mul(r, states - i);
  return r;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

// Monotone non-decreasing maps [1..k] -> [1..n]: C(n+k-1, k).
std::uint64_t monotone_maps(std::uint32_t n, std::uint32_t k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  std::uint64_t r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    r = sat_mul(r, n - 1 + i);
    r /= i;  // exact: product of i consecutive integers divisible by i!
  }
  return r;
}

std::uint64_t count_short_witnesses(std::uint32_t leader_states,
                                    std::uint32_t domain, std::uint32_t order) {
  std::uint64_t total = 0;
  for (std::uint32_t n = 0; n <= leader_states; ++n) {
    std::uint64_t words =
        sat_mul(injective_words(leader_states, n), sat_pow(domain + 1, n));
    total = sat_add(total, sat_mul(words, sat_mul(leader_states,
                                                  monotone_maps(n, order))));
  }
  return total;
}

bool has_transition(const Automaton& a, StateId src, MemOp op, StateId dst) {
  return std::binary_search(a.transitions.begin(), a.transitions.end(),
                            Transition{src, op, dst});
}

void validate_beta(const System& s, const FirstWriteSeq& beta) {
  SymbolMask seen = 0;
  for (Symbol b : beta) {
    if (b >= s.domain_size) throw SemanticError("first-write symbol out of range");
    if ((seen >> b) & 1)
      throw SemanticError("first-write sequence repeats a symbol");
    seen |= SymbolMask{1} << b;
  }
}

// S_beta(i) for 1-based positions: symbols among the first `avail_count`
// entries of beta whose position is <= i. Monotone by construction.
std::vector<SymbolMask> availability(const Witness& x, const FirstWriteSeq& beta,
                                     std::size_t avail_count) {
  std::vector<SymbolMask> s(x.word.size() + 1, 0);
  for (std::size_t l = 0; l < avail_count; ++l) {
    std::uint32_t pos = x.fw_positions[l];
    s[pos] |= SymbolMask{1} << beta[l];
  }
  for (std::size_t i = 2; i < s.size(); ++i) s[i] |= s[i - 1];
  return s;
}

// Composite writes p -!a-> q'' for every write p -!a-> q that internal steps
// and re-reads of a can extend; a thread may always read back its own last
// write.
Automaton write_read_closure(const Automaton& a) {
  // Reflexive-transitive closure over internal steps.
  std::vector<std::vector<StateId>> eps_reach(a.state_count);
  std::vector<std::vector<StateId>> eps_adj(a.state_count);
  for (const auto& t : a.transitions)
    if (t.op.is_epsilon()) eps_adj[t.src].push_back(t.dst);
  for (StateId q = 0; q < a.state_count; ++q) {
    std::vector<char> seen(a.state_count, 0);
    std::deque<StateId> queue{q};
    seen[q] = 1;
    while (!queue.empty()) {
      StateId v = queue.front();
      queue.pop_front();
      eps_reach[q].push_back(v);
      for (StateId w : eps_adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
  }

  std::vector<std::vector<std::pair<Symbol, StateId>>> reads(a.state_count);
  for (const auto& t : a.transitions)
    if (t.op.is_read()) reads[t.src].emplace_back(t.op.value, t.dst);

  std::set<Transition> all(a.transitions.begin(), a.transitions.end());
  std::deque<Transition> worklist;
  for (const auto& t : a.transitions)
    if (t.op.is_write()) worklist.push_back(t);
  while (!worklist.empty()) {
    Transition w = worklist.front();
    worklist.pop_front();
    for (StateId mid : eps_reach[w.dst]) {
      for (const auto& [b, dst] : reads[mid]) {
        if (b != w.op.value) continue;
        Transition composite{w.src, w.op, dst};
        if (all.insert(composite).second) worklist.push_back(composite);
      }
    }
  }

  Automaton out = a;
  out.transitions.assign(all.begin(), all.end());
  return out;
}

// Loop sets per availability mask, computed once per mask: restrict leader
// reads to the mask, decompose into SCCs, collect write labels inside each
// component.
class LoopOracle {
 public:
  explicit LoopOracle(const Automaton& leader) : leader_(&leader) {}

  SymbolMask loops(StateId q, SymbolMask avail) {
    auto it = cache_.find(avail);
    if (it == cache_.end()) it = cache_.emplace(avail, compute(avail)).first;
    return it->second.comp_writes[it->second.comp[q]];
  }

 private:
  struct Info {
    std::vector<std::uint32_t> comp;
    std::vector<SymbolMask> comp_writes;
  };

  Info compute(SymbolMask avail) const {
    std::vector<std::vector<std::uint32_t>> adj(leader_->state_count);
    for (const auto& t : leader_->transitions) {
      bool keep = t.op.is_write() || t.op.is_epsilon() ||
                  (t.op.is_read() && ((avail >> t.op.value) & 1));
      if (keep) adj[t.src].push_back(t.dst);
    }
    Info info;
    std::uint32_t comps = 0;
    info.comp = detail::tarjan_scc(adj, &comps);
    info.comp_writes.assign(comps, 0);
    for (const auto& t : leader_->transitions)
      if (t.op.is_write() && info.comp[t.src] == info.comp[t.dst])
        info.comp_writes[info.comp[t.src]] |= SymbolMask{1} << t.op.value;
    return info;
  }

  const Automaton* leader_;
  std::unordered_map<SymbolMask, Info> cache_;
};

// Shared machinery for the expression/contributor product searches. The
// contributor is taken write-read closed, and the search starts from every
// state reachable while the memory still holds the initial value.
struct Ctx {
  explicit Ctx(const System& sys)
      : s(sys),
        loops(sys.leader),
        contributor(write_read_closure(sys.contributor)) {
    contrib_adj.resize(contributor.state_count);
    for (const auto& t : contributor.transitions)
      contrib_adj[t.src].emplace_back(t.op, t.dst);
    writers.assign(s.domain_size,
                   std::vector<char>(contributor.state_count, 0));
    for (const auto& t : contributor.transitions)
      if (t.op.is_write()) writers[t.op.value][t.src] = 1;

    // Pristine phase: internal steps and reads of the initial value, all
    // schedulable before the first write of the computation.
    std::vector<char> seen(contributor.state_count, 0);
    std::deque<StateId> queue{contributor.initial};
    seen[contributor.initial] = 1;
    while (!queue.empty()) {
      StateId p = queue.front();
      queue.pop_front();
      start_states.push_back(p);
      for (const auto& t : contributor.transitions) {
        if (t.src != p || seen[t.dst]) continue;
        if (t.op.is_epsilon() ||
            (t.op.is_read() && t.op.value == s.initial_value)) {
          seen[t.dst] = 1;
          queue.push_back(t.dst);
        }
      }
    }
  }

  // Gamma_i per chain position (1-based, gamma[i-1]) for the given witness
  // and availability horizon. Fills the shared buffer.
  void chain_gammas(const Witness& x, const FirstWriteSeq& beta,
                    std::size_t avail_count, std::uint32_t positions) {
    std::vector<SymbolMask> avail = availability(x, beta, avail_count);
    gamma_buf.assign(positions, 0);
    for (std::uint32_t i = 1; i <= positions && i <= x.word.size(); ++i) {
      SymbolMask sb = avail[i];
      gamma_buf[i - 1] = loops.loops(x.word[i - 1].state, sb) | sb;
    }
  }

  // Reachable (state, position) pairs of the product of the contributor
  // (reads visible, writes and internal steps silent) with the chain
  // Gamma_1* {adv_1, eps} ... Gamma_P*. Positions advance spontaneously.
  // Results land in seen_buf; buffers are reused across calls.
  void product_reach(const std::vector<Symbol>& advance) {
    const std::uint32_t P = static_cast<std::uint32_t>(gamma_buf.size());
    const std::uint32_t C = contributor.state_count;
    seen_buf.assign(static_cast<std::size_t>(P) * C, 0);
    queue_buf.clear();
    auto push = [&](StateId p, std::uint32_t pos) {
      std::size_t id = static_cast<std::size_t>(pos) * C + p;
      if (!seen_buf[id]) {
        seen_buf[id] = 1;
        queue_buf.push_back((static_cast<std::uint64_t>(pos) << 32) | p);
      }
    };
    for (StateId p0 : start_states) push(p0, 0);
    for (std::size_t at = 0; at < queue_buf.size(); ++at) {
      std::uint64_t node = queue_buf[at];
      auto pos = static_cast<std::uint32_t>(node >> 32);
      auto p = static_cast<StateId>(node & 0xffffffffu);
      if (pos + 1 < P) push(p, pos + 1);
      for (const auto& [op, dst] : contrib_adj[p]) {
        if (op.is_read()) {
          if ((gamma_buf[pos] >> op.value) & 1) push(dst, pos);
          if (pos + 1 < P && advance[pos] == op.value) push(dst, pos + 1);
        } else {
          push(dst, pos);  // writes and internal steps are silent
        }
      }
    }
  }

  const System& s;
  LoopOracle loops;
  Automaton contributor;
  std::vector<std::vector<std::pair<MemOp, StateId>>> contrib_adj;
  std::vector<std::vector<char>> writers;
  std::vector<StateId> start_states;
  std::vector<SymbolMask> gamma_buf;
  std::vector<char> seen_buf;
  std::vector<std::uint64_t> queue_buf;
  std::vector<Symbol> advance_buf;
};

bool contributor_valid_at_impl(Ctx& ctx, const Witness& x,
                               const FirstWriteSeq& beta, std::uint32_t i) {
  Symbol value = beta[i - 1];
  const std::vector<char>& q_i = ctx.writers[value];
  if (std::find(q_i.begin(), q_i.end(), 1) == q_i.end()) return false;

  std::uint32_t j = x.fw_positions[i - 1];
  ctx.chain_gammas(x, beta, i - 1, j);
  ctx.advance_buf.assign(j > 0 ? j - 1 : 0, kNoWrite);
  for (std::uint32_t m = 0; m + 1 < j; ++m) ctx.advance_buf[m] = x.word[m].write;

  ctx.product_reach(ctx.advance_buf);
  const std::uint32_t C = ctx.contributor.state_count;
  for (std::uint32_t pos = 0; pos < j; ++pos)
    for (StateId p = 0; p < C; ++p)
      if (ctx.seen_buf[static_cast<std::size_t>(pos) * C + p] && q_i[p])
        return true;
  return false;
}

std::vector<StateId> full_expr_states_impl(Ctx& ctx, const Witness& x,
                                           const FirstWriteSeq& beta) {
  const std::uint32_t n = static_cast<std::uint32_t>(x.word.size());
  ctx.chain_gammas(x, beta, beta.size(), n + 1);
  ctx.advance_buf.assign(n, kNoWrite);
  for (std::uint32_t m = 0; m < n; ++m) ctx.advance_buf[m] = x.word[m].write;

  ctx.product_reach(ctx.advance_buf);
  const std::uint32_t C = ctx.contributor.state_count;
  std::vector<StateId> out;
  for (StateId p = 0; p < C; ++p)
    for (std::uint32_t pos = 0; pos <= n; ++pos)
      if (ctx.seen_buf[static_cast<std::size_t>(pos) * C + p]) {
        out.push_back(p);
        break;
      }
  return out;
}

}  // namespace

bool Witness::is_short() const {
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (word[i].state == word[j].state) return false;
  return true;
}

void validate_witness(const System& s, const Witness& x) {
  for (const auto& letter : x.word) {
    if (letter.state >= s.leader.state_count)
      throw SemanticError("witness state out of range");
    if (letter.write != kNoWrite && letter.write >= s.domain_size)
      throw SemanticError("witness write symbol out of range");
  }
  if (x.target >= s.leader.state_count)
    throw SemanticError("witness target out of range");
  if (x.order() > s.domain_size)
    throw SemanticError("witness order exceeds domain size");
  std::uint32_t prev = 1;
  for (std::uint32_t pos : x.fw_positions) {
    if (pos < 1 || pos > x.word.size())
      throw SemanticError("first-write position out of range");
    if (pos < prev)
      throw SemanticError("first-write positions must be non-decreasing");
    prev = pos;
  }
}

Witness shrink_star(Witness x) {
  while (true) {
    // Least position r with a later repetition; minimal matching t > r.
    std::size_t n = x.word.size();
    std::size_t r = n, t = n;
    for (std::size_t i = 0; i < n && r == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (x.word[i].state == x.word[j].state) {
          r = i;
          t = j;
          break;
        }
    if (r == n) return x;
    // Drop positions r..t-1 (0-based); remap 1-based first-write positions.
    std::uint32_t r1 = static_cast<std::uint32_t>(r) + 1;
    std::uint32_t t1 = static_cast<std::uint32_t>(t) + 1;
    for (auto& pos : x.fw_positions) {
      if (pos < r1) continue;
      pos = pos <= t1 ? r1 : pos - (t1 - r1);
    }
    x.word.erase(x.word.begin() + static_cast<std::ptrdiff_t>(r),
                 x.word.begin() + static_cast<std::ptrdiff_t>(t));
  }
}

Witness witness_concat(const Witness& x, const Witness& y) {
  if (y.init() != x.target)
    throw SemanticError("witness concatenation: init(y) differs from target(x)");
  Witness out;
  out.word = x.word;
  out.word.insert(out.word.end(), y.word.begin(), y.word.end());
  out.target = y.target;
  out.fw_positions = x.fw_positions;
  for (std::uint32_t pos : y.fw_positions)
    out.fw_positions.push_back(pos + static_cast<std::uint32_t>(x.word.size()));
  return out;
}

Witness short_concat(const Witness& x, const Witness& y) {
  Witness z = shrink_star(witness_concat(x, y));
  assert(z.is_short());
  return z;
}

SymbolMask loop_set(const System& s, StateId q, SymbolMask avail) {
  LoopOracle oracle(s.leader);
  return oracle.loops(q, avail);
}

namespace {

bool leader_valid_core(const System& s, const Witness& x,
                       const FirstWriteSeq& beta) {
  std::vector<SymbolMask> avail = availability(x, beta, beta.size());
  const std::size_t n = x.word.size();
  // Track whether the run can arrive at the position with the memory still
  // holding the initial value: until the first write anywhere, the leader
  // may also read that value.
  bool pristine = true, written = false;
  for (std::size_t i = 0; i < n; ++i) {
    StateId q = x.word[i].state;
    StateId next = i + 1 < n ? x.word[i + 1].state : x.target;
    Symbol a = x.word[i].write;
    bool next_pristine = false, next_written = false;
    if (a != kNoWrite) {
      if (has_transition(s.leader, q, MemOp::write(a), next))
        next_written = pristine || written;
    } else {
      if (q == next || has_transition(s.leader, q, MemOp::epsilon(), next)) {
        next_pristine = pristine;
        next_written = written;
      }
      for (SymbolMask m = avail[i + 1]; m != 0; m &= m - 1) {
        Symbol b = static_cast<Symbol>(std::countr_zero(m));
        if (has_transition(s.leader, q, MemOp::read(b), next)) {
          next_written = pristine || written;
          break;
        }
      }
      if (pristine &&
          has_transition(s.leader, q, MemOp::read(s.initial_value), next))
        next_pristine = true;
    }
    if (!next_pristine && !next_written) return false;
    pristine = next_pristine;
    written = next_written;
  }
  return true;
}

}  // namespace

bool leader_valid(const System& s, const Witness& x, const FirstWriteSeq& beta) {
  validate_witness(s, x);
  validate_beta(s, beta);
  if (beta.size() != x.order())
    throw SemanticError("first-write sequence length differs from witness order");
  return leader_valid_core(s, x, beta);
}

bool contributor_valid_at(const System& s, const Witness& x,
                          const FirstWriteSeq& beta, std::uint32_t i) {
  validate_witness(s, x);
  validate_beta(s, beta);
  if (beta.size() != x.order())
    throw SemanticError("first-write sequence length differs from witness order");
  if (i < 1 || i > x.order())
    throw SemanticError("first-write index out of range");
  Ctx ctx(s);
  return contributor_valid_at_impl(ctx, x, beta, i);
}

std::vector<StateId> full_expr_states(const System& s, const Witness& x,
                                      const FirstWriteSeq& beta) {
  validate_witness(s, x);
  validate_beta(s, beta);
  if (beta.size() != x.order())
    throw SemanticError("first-write sequence length differs from witness order");
  Ctx ctx(s);
  return full_expr_states_impl(ctx, x, beta);
}

System leader_write_read_closure(const System& s) {
  validate(s);
  System out = s;
  out.leader = write_read_closure(s.leader);
  canonicalize(out);
  validate(out);
  return out;
}

std::optional<std::uint32_t> ShortValidTable::beta_id(
    const FirstWriteSeq& beta) const {
  for (std::uint32_t i = 0; i < betas.size(); ++i)
    if (betas[i] == beta) return i;
  return std::nullopt;
}

namespace {

struct WitnessHash {
  std::size_t operator()(const Witness& w) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(w.target);
    for (const auto& l : w.word) mix((std::uint64_t{l.state} << 32) | l.write);
    mix(0x517cc1b727220a95ull);
    for (auto p : w.fw_positions) mix(p);
    return static_cast<std::size_t>(h);
  }
};

struct Interner {
  std::vector<Witness>& pool;
  std::unordered_map<Witness, std::uint32_t, WitnessHash> ids;

  std::uint32_t intern(const Witness& w) {
    auto it = ids.find(w);
    if (it != ids.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(pool.size());
    pool.push_back(w);
    ids.emplace(w, id);
    return id;
  }

  std::optional<std::uint32_t> find(const Witness& w) const {
    auto it = ids.find(w);
    if (it == ids.end()) return std::nullopt;
    return it->second;
  }
};

// All injective first-write sequences, shortest first, lexicographic within
// a length.
std::vector<FirstWriteSeq> enumerate_betas(std::uint32_t domain) {
  std::vector<FirstWriteSeq> out;
  std::vector<FirstWriteSeq> level{{}};
  out.push_back({});
  for (std::uint32_t len = 1; len <= domain; ++len) {
    std::vector<FirstWriteSeq> next;
    for (const auto& prefix : level) {
      SymbolMask used = 0;
      for (Symbol b : prefix) used |= SymbolMask{1} << b;
      for (Symbol b = 0; b < domain; ++b) {
        if ((used >> b) & 1) continue;
        FirstWriteSeq beta = prefix;
        beta.push_back(b);
        next.push_back(beta);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace

ShortValidTable valid_short_table(const System& s, WitnessOptions options) {
  validate(s);
  if (s.domain_size > kMaskBits)
    throw CapacityError("domain larger than 64 symbols");
  require_mask_capacity(s.leader, "leader");

  const std::uint32_t L = s.leader.state_count;
  const std::uint32_t D = s.domain_size;

  std::uint64_t universe = 0;
  for (std::uint32_t k = 0; k <= D; ++k)
    universe = sat_add(universe, count_short_witnesses(L, D, k));
  if (universe > options.max_universe)
    throw CapacityError("short-witness universe of " +
                        (universe == kSat ? std::string("> 2^64")
                                          : std::to_string(universe)) +
                        " exceeds the cap of " +
                        std::to_string(options.max_universe));

  ShortValidTable table;
  table.preprocessed = leader_write_read_closure(s);
  const System& ps = table.preprocessed;
  Ctx ctx(ps);

  table.betas = enumerate_betas(D);
  std::map<FirstWriteSeq, std::uint32_t> beta_index;
  for (std::uint32_t i = 0; i < table.betas.size(); ++i)
    beta_index.emplace(table.betas[i], i);
  table.entries.resize(table.betas.size());

  Interner interner{table.witnesses, {}};
  std::vector<std::uint32_t> ord0;
  std::vector<std::vector<std::uint32_t>> ord1_by_init(L);

  // Enumerate order-0 and order-1 short witnesses; higher orders are only
  // discovered as compositions.
  std::vector<WitnessLetter> word;
  std::uint64_t used = 0;
  auto emit_word = [&]() {
    Witness w;
    w.word = word;
    for (StateId target = 0; target < L; ++target) {
      w.target = target;
      w.fw_positions.clear();
      ord0.push_back(interner.intern(w));
      for (std::uint32_t pos = 1; pos <= word.size(); ++pos) {
        w.fw_positions = {pos};
        ord1_by_init[w.init()].push_back(interner.intern(w));
      }
    }
  };
  auto rec = [&](auto&& self) -> void {
    emit_word();
    if (word.size() == L) return;
    for (StateId q = 0; q < L; ++q) {
      if ((used >> q) & 1) continue;
      used |= StateMask{1} << q;
      word.push_back({q, kNoWrite});
      self(self);
      for (Symbol b = 0; b < D; ++b) {
        word.back().write = b;
        self(self);
      }
      word.pop_back();
      used &= ~(StateMask{1} << q);
    }
  };
  rec(rec);

  table.stats.universe = universe;
  table.stats.ord0 = ord0.size();
  std::uint64_t ord1_total = 0;
  for (const auto& v : ord1_by_init) ord1_total += v.size();
  table.stats.ord1 = ord1_total;
  table.stats.pairs_touched.assign(D, 0);
  table.stats.pairs_bound.assign(D, 0);

  // Symbols no contributor can write never occur in a true entry's
  // sequence; their extensions are skipped wholesale.
  SymbolMask writable = 0;
  for (Symbol b = 0; b < D; ++b)
    for (StateId p = 0; p < ctx.contributor.state_count; ++p)
      if (ctx.writers[b][p]) {
        writable |= SymbolMask{1} << b;
        break;
      }

  // Base stratum: order-0 validity is leader validity along the empty
  // sequence.
  const std::uint32_t beta_eps = beta_index.at({});
  for (std::uint32_t z_id : ord0)
    if (leader_valid_core(ps, table.witnesses[z_id], {}))
      table.entries[beta_eps].emplace(z_id, std::make_pair<std::int64_t, std::int64_t>(-1, -1));

  // Stratum k: extend true entries of order k-1 by one first write. Only
  // pairs from Ord(k-1) x Ord(1) are ever touched.
  for (std::uint32_t k = 1; k <= D; ++k) {
    table.stats.pairs_bound[k - 1] = sat_mul(count_short_witnesses(L, D, k - 1),
                                             count_short_witnesses(L, D, 1));
    std::map<std::uint32_t, std::vector<std::uint32_t>> x_candidates;
    for (std::uint32_t beta_id = 0; beta_id < table.betas.size(); ++beta_id) {
      if (table.betas[beta_id].size() != k - 1) continue;
      for (const auto& [x_id, decomp] : table.entries[beta_id])
        x_candidates[x_id].push_back(beta_id);
    }
    for (const auto& [x_id, beta_ids] : x_candidates) {
      const Witness x = table.witnesses[x_id];
      for (std::uint32_t y_id : ord1_by_init[x.target]) {
        const Witness y = table.witnesses[y_id];
        ++table.stats.pairs_touched[k - 1];
        if (x.order() != k - 1 || y.order() != 1)
          ++table.stats.stratum_violations;
        Witness xy = witness_concat(x, y);
        Witness z = shrink_star(xy);
        // Intern only when the pair proves an entry.
        std::optional<std::uint32_t> z_id = interner.find(z);
        for (std::uint32_t beta_prefix_id : beta_ids) {
          const FirstWriteSeq& prefix = table.betas[beta_prefix_id];
          SymbolMask used_symbols = 0;
          for (Symbol b : prefix) used_symbols |= SymbolMask{1} << b;
          for (Symbol b = 0; b < D; ++b) {
            if ((used_symbols >> b) & 1 || !((writable >> b) & 1)) continue;
            FirstWriteSeq beta = prefix;
            beta.push_back(b);
            std::uint32_t beta_id = beta_index.at(beta);
            if (z_id && table.entries[beta_id].count(*z_id)) continue;
            if (leader_valid_core(ps, xy, beta) &&
                contributor_valid_at_impl(ctx, xy, beta, k)) {
              if (!z_id) z_id = interner.intern(z);
              table.entries[beta_id].emplace(*z_id, std::make_pair<std::int64_t, std::int64_t>(x_id, y_id));
            }
          }
        }
      }
    }
  }

  for (const auto& m : table.entries) table.stats.true_entries += m.size();
  return table;
}

WitnessReachResult lcr_witness(const System& s, WitnessOptions options) {
  ShortValidTable table = valid_short_table(s, options);
  WitnessReachResult res;
  res.stats = table.stats;
  std::vector<char> is_final(s.leader.state_count, 0);
  for (StateId q : s.final_states) is_final[q] = 1;
  for (const auto& entries : table.entries) {
    for (const auto& [z_id, decomp] : entries) {
      const Witness& z = table.witnesses[z_id];
      if (z.init() == s.leader.initial && is_final[z.target]) {
        res.reachable = true;
        return res;
      }
    }
  }
  return res;
}

std::vector<Interface> interfaces_from_witness_table(
    const ShortValidTable& table,
    const std::optional<std::vector<StateId>>& restrict_final) {
  const System& ps = table.preprocessed;
  require_mask_capacity(ps.contributor, "contributor");
  std::vector<char> keep(ps.leader.state_count, 1);
  if (restrict_final) {
    std::fill(keep.begin(), keep.end(), 0);
    for (StateId q : *restrict_final)
      if (q < ps.leader.state_count) keep[q] = 1;
  }

  Ctx ctx(ps);
  std::set<Interface> out;
  for (std::uint32_t beta_id = 0; beta_id < table.betas.size(); ++beta_id) {
    const FirstWriteSeq& beta = table.betas[beta_id];
    for (const auto& [z_id, decomp] : table.entries[beta_id]) {
      const Witness& z = table.witnesses[z_id];
      if (z.init() != ps.leader.initial || !keep[z.target]) continue;

      StateMask states = mask_of_states(full_expr_states_impl(ctx, z, beta));

      std::vector<Symbol> candidates(beta.begin(), beta.end());
      std::size_t last_write = z.word.size();
      for (std::size_t i = z.word.size(); i-- > 0;)
        if (z.word[i].write != kNoWrite) {
          last_write = i;
          break;
        }
      if (last_write < z.word.size()) {
        // The last leader write survives to the end only when every later
        // position can be taken without reading.
        bool survives = true;
        for (std::size_t i = last_write + 1; i < z.word.size() && survives; ++i) {
          StateId q = z.word[i].state;
          StateId next = i + 1 < z.word.size() ? z.word[i + 1].state : z.target;
          survives = (q == next) ||
                     has_transition(ps.leader, q, MemOp::epsilon(), next);
        }
        if (survives) candidates.push_back(z.word[last_write].write);
      } else if (beta.empty()) {
        candidates.push_back(ps.initial_value);
      }

      for (Symbol a : candidates)
        out.insert(Interface{states, z.target, a});
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace lcs
