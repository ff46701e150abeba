#include "mulrw/adderdetect.hpp"

#include <algorithm>

namespace mulrw {

BitpCounters& bitp_counters() {
  thread_local BitpCounters c;
  return c;
}

bool certify_bit(const TermPtr& t) {
  auto& c = bitp_counters();
  if (shape_certified_bit(*t)) {
    ++c.lookups;
    return true;
  }
  // Fallback range analysis; should not trigger on engine-produced wires.
  ++c.rederivations;
  if (t->kind == Kind::Sum) {
    BigInt lo = 0, hi = 0;
    for (const auto& e : t->sum) {
      if (!shape_certified_bit(*e.term)) return false;
      BigInt blo = 0, bhi = 1;
      if (e.term->kind == Kind::Const) blo = bhi = e.term->value;
      if (e.coeff >= 0) {
        hi += e.coeff * bhi;
        lo += e.coeff * blo;
      } else {
        lo += e.coeff * bhi;
        hi += e.coeff * blo;
      }
    }
    return lo >= 0 && hi <= 1;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Classification.

namespace {

std::optional<AdderTemplate> match_unit(const Simulator& sim, const ModuleDef& m,
                                        bool full) {
  const int nin = full ? 3 : 2;
  std::vector<std::string> obits = m.output_bits();
  if (static_cast<int>(m.input_bits().size()) != nin || obits.size() != 2)
    return std::nullopt;
  for (int sum_out = 0; sum_out < 2; ++sum_out) {
    const int carry_out = 1 - sum_out;
    bool ok = true;
    for (int v = 0; v < (1 << nin) && ok; ++v) {
      std::vector<std::uint8_t> in(nin);
      int total = 0;
      for (int i = 0; i < nin; ++i) {
        in[i] = (v >> i) & 1;
        total += in[i];
      }
      auto out = sim.run(m.name, in);
      ok = out[sum_out] == total % 2 && out[carry_out] == total / 2;
    }
    if (ok) {
      AdderTemplate t;
      t.kind = full ? AdderKind::FullAdder : AdderKind::HalfAdder;
      t.sum_out = sum_out;
      t.carry_out = carry_out;
      return t;
    }
  }
  return std::nullopt;
}

std::optional<AdderTemplate> match_vector(const Simulator& sim, const ModuleDef& m,
                                          int limit) {
  // Two equal-width addend ports, an optional 1-bit carry-in, and output
  // bits forming a + b (+ cin), little-endian, of width w or w+1.
  std::vector<const Port*> wide, cin;
  for (const auto& p : m.inputs)
    (p.width == 1 ? cin : wide).push_back(&p);
  if (wide.size() == 2) {
    // two multi-bit addends, at most one 1-bit cin
    if (cin.size() > 1) return std::nullopt;
  } else if (wide.empty() && (cin.size() == 2 || cin.size() == 3)) {
    return std::nullopt;  // unit-adder shaped; handled elsewhere
  } else {
    return std::nullopt;
  }
  const Port* pa = wide[0];
  const Port* pb = wide[1];
  if (pa->width != pb->width) return std::nullopt;
  const int w = pa->width;

  int total_in = 2 * w + static_cast<int>(cin.size());
  if (total_in > limit) return std::nullopt;

  std::vector<std::string> obits = m.output_bits();
  const int outw = static_cast<int>(obits.size());
  if (outw != w && outw != w + 1) return std::nullopt;

  // Bit positions in input_bits() order.
  AdderTemplate t;
  t.kind = AdderKind::VectorAdder;
  t.width = w;
  int pos = 0;
  for (const auto& p : m.inputs) {
    for (int i = 0; i < p.width; ++i, ++pos) {
      if (&p == pa) t.a_bits.push_back(pos);
      else if (&p == pb) t.b_bits.push_back(pos);
      else t.cin_bit = pos;
    }
  }
  for (int k = 0; k < outw; ++k) t.out_bits.push_back(k);

  const int nin = total_in;
  for (long long v = 0; v < (1LL << nin); ++v) {
    std::vector<std::uint8_t> in(nin);
    for (int i = 0; i < nin; ++i) in[i] = (v >> i) & 1;
    long long a = 0, b = 0, c = 0;
    for (int i = 0; i < w; ++i) {
      a |= static_cast<long long>(in[t.a_bits[i]]) << i;
      b |= static_cast<long long>(in[t.b_bits[i]]) << i;
    }
    if (t.cin_bit >= 0) c = in[t.cin_bit];
    long long expect = (a + b + c) & ((1LL << outw) - 1);
    auto out = sim.run(m.name, in);
    for (int k = 0; k < outw; ++k)
      if (out[k] != ((expect >> k) & 1)) return std::nullopt;
  }
  return t;
}

}  // namespace

std::optional<AdderTemplate> classify_exhaustive(const Simulator& sim,
                                                 const ModuleDef& m, int limit) {
  const int total_in = static_cast<int>(m.input_bits().size());
  if (m.adder_hint) {
    const std::string& k = m.adder_hint->kind;
    if (total_in > limit) return std::nullopt;  // RCA beyond limit: engine fallback
    if (k == "HA") return match_unit(sim, m, /*full=*/false);
    if (k == "FA") return match_unit(sim, m, /*full=*/true);
    if (k == "RCA") return match_vector(sim, m, limit);
    return std::nullopt;
  }
  if (total_in > limit) return std::nullopt;
  if (auto t = match_unit(sim, m, /*full=*/false)) return t;
  if (auto t = match_unit(sim, m, /*full=*/true)) return t;
  return match_vector(sim, m, limit);
}

// ---------------------------------------------------------------------------
// Instantiation.

namespace {

// Bitp-certify a constructor result for use as a wire value.
TermPtr wrap_bit(const TermPtr& t, const TermBuilder& b) {
  switch (t->kind) {
    case Kind::Const:
    case Kind::Var:
    case Kind::AndProduct:
    case Kind::Bitp:
      return t;
    default:
      return b.bitp(t);
  }
}

SumList certified_sumlist(const TermPtr& t) {
  if (!certify_bit(t))
    throw UnreliableBitp("adder input cannot be certified bit-valued: " +
                         term_to_string(t));
  return to_sumlist(t);
}

}  // namespace

std::vector<TermPtr> instantiate_template(const AdderTemplate& t,
                                          const std::vector<TermPtr>& actuals,
                                          RewriteEngine& rw) {
  const TermBuilder& b = rw.builder();
  switch (t.kind) {
    case AdderKind::HalfAdder:
    case AdderKind::FullAdder: {
      SumList sum = certified_sumlist(actuals[0]);
      sum = rw.merge(sum, certified_sumlist(actuals[1]));
      if (t.kind == AdderKind::FullAdder)
        sum = rw.merge(sum, certified_sumlist(actuals[2]));
      std::vector<TermPtr> out(2);
      out[t.sum_out] = wrap_bit(rw.mk_s(sum), b);
      out[t.carry_out] = wrap_bit(rw.mk_c(std::move(sum)), b);
      return out;
    }
    case AdderKind::VectorAdder: {
      std::vector<TermPtr> out(t.out_bits.size());
      SumList carry;
      if (t.cin_bit >= 0) carry = certified_sumlist(actuals[t.cin_bit]);
      for (int k = 0; k < t.width; ++k) {
        SumList col = rw.merge(certified_sumlist(actuals[t.a_bits[k]]),
                               certified_sumlist(actuals[t.b_bits[k]]));
        col = rw.merge(col, carry);
        if (static_cast<std::size_t>(k) < t.out_bits.size())
          out[t.out_bits[k]] = wrap_bit(rw.mk_s(col), b);
        carry = to_sumlist(rw.mk_c(std::move(col)));
      }
      if (t.out_bits.size() == static_cast<std::size_t>(t.width) + 1) {
        TermPtr c = carry.empty() ? b.constant(0)
                  : carry.size() == 1 && carry[0].coeff == 1
                      ? carry[0].term
                      : b.sum_term(std::move(carry));
        out[t.out_bits[t.width]] = wrap_bit(c, b);
      }
      return out;
    }
  }
  throw RewriteError("unreachable adder kind");
}

}  // namespace mulrw
