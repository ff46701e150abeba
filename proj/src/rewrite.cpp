#include "mulrw/rewrite.hpp"

#include <algorithm>

namespace mulrw {

namespace {

std::int64_t mod2(std::int64_t k) { return ((k % 2) + 2) % 2; }
std::int64_t div2_floor(std::int64_t k) { return (k - mod2(k)) / 2; }

SumList negated(SumList l) {
  for (auto& e : l) e.coeff = -e.coeff;
  return l;
}

SumList single(TermPtr t, std::int64_t k = 1) {
  SumList l;
  l.push_back({k, std::move(t)});
  return l;
}

}  // namespace

SumList merge_sum(const SumList& l1, const SumList& l2, RewriteStats* stats) {
  if (stats) ++stats->merges;
  SumList out;
  out.reserve(l1.size() + l2.size());
  std::size_t i = 0, j = 0;
  while (i < l1.size() && j < l2.size()) {
    int c = term_compare(*l1[i].term, *l2[j].term);
    if (c < 0) {
      out.push_back(l1[i++]);
    } else if (c > 0) {
      out.push_back(l2[j++]);
    } else {
      std::int64_t k = l1[i].coeff + l2[j].coeff;
      if (k != 0) out.push_back({k, l1[i].term});
      ++i;
      ++j;
    }
  }
  for (; i < l1.size(); ++i) out.push_back(l1[i]);
  for (; j < l2.size(); ++j) out.push_back(l2[j]);
  return out;
}

SumList dedup_for_s(const SumList& l) {
  SumList out;
  out.reserve(l.size());
  for (const auto& e : l) {
    std::int64_t k = mod2(e.coeff);
    if (k != 0) out.push_back({k, e.term});
  }
  return out;
}

DedupForC dedup_for_c(const SumList& l) {
  DedupForC r;
  for (const auto& e : l) {
    std::int64_t q = div2_floor(e.coeff);
    std::int64_t rem = e.coeff - 2 * q;
    if (q != 0) r.extracted.push_back({q, e.term});
    if (rem != 0) r.remaining.push_back({rem, e.term});
  }
  return r;
}

SCArgs partition_args(SumList l) {
  SCArgs a;
  for (auto& e : l) {
    switch (e.term->kind) {
      case Kind::SNode:
        a.s_args.push_back(std::move(e));
        break;
      case Kind::CNode:
        a.c_args.push_back(std::move(e));
        break;
      case Kind::Var:
      case Kind::AndProduct:
      case Kind::Const:
        a.pp_args.push_back(std::move(e));
        break;
      default:
        throw RewriteError("InternalKindError: unexpected addend kind in s/c args");
    }
  }
  return a;
}

SumList flatten_args(const SCArgs& a) {
  SumList l = merge_sum(a.s_args, a.pp_args);
  return merge_sum(l, a.c_args);
}

SumList to_sumlist(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Const:
      if (t->value == 0) return {};
      return single(t);
    case Kind::Var:
    case Kind::AndProduct:
    case Kind::SNode:
    case Kind::CNode:
      return single(t);
    case Kind::Bitp:
      return to_sumlist(t->children.front());
    case Kind::Sum:
      return t->sum;
    case Kind::Gate:
      throw RewriteError("cannot flatten a raw Gate term into a summation");
  }
  return {};
}

// ---------------------------------------------------------------------------
// Canonical s constructor.

TermPtr RewriteEngine::mk_s(SumList l) {
  ++stats_.mk_s_calls;

  // s(s(x) + y) = s(x + y): flatten inner s addends.  Their coefficient is
  // reduced mod 2 first (pairs of equal addends vanish inside s).
  bool has_snode = true;
  while (has_snode) {
    has_snode = false;
    SumList rest;
    rest.reserve(l.size());
    SumList merged_inners;
    for (auto& e : l) {
      if (e.term->kind == Kind::SNode) {
        if (mod2(e.coeff) == 1)
          merged_inners = merge(merged_inners, flatten_args(e.term->args));
        has_snode = true;
      } else {
        rest.push_back(std::move(e));
      }
    }
    if (merged_inners.empty())
      l = std::move(rest);
    else
      l = merge(rest, merged_inners);
  }

  // Fold constants, then reduce every coefficient mod 2.
  BigInt cpart = 0;
  SumList out;
  out.reserve(l.size());
  for (auto& e : l) {
    if (e.term->kind == Kind::Const) {
      cpart += BigInt(e.coeff) * e.term->value;
    } else {
      std::int64_t k = mod2(e.coeff);
      if (k != 0) out.push_back({k, std::move(e.term)});
    }
  }
  const bool const_bit = floor_mod2(cpart) == 1;
  if (out.empty()) return builder_.constant(const_bit ? 1 : 0);
  if (const_bit) out = merge(out, single(builder_.constant(1)));

  return builder_.bitp(builder_.snode(partition_args(std::move(out))));
}

// ---------------------------------------------------------------------------
// Canonical c constructor.

TermPtr RewriteEngine::mk_c(SumList l) {
  ++stats_.mk_c_calls;

  SumList extracted;
  BigInt cpart = 0;

  auto fold_consts = [&](SumList& in) {
    SumList kept;
    kept.reserve(in.size());
    for (auto& e : in) {
      if (e.term->kind == Kind::Const)
        cpart += BigInt(e.coeff) * e.term->value;
      else
        kept.push_back(std::move(e));
    }
    in = std::move(kept);
  };

  fold_consts(l);

  // c(s(x) + y) = c(x + y) - c(x): flatten s addends, emitting the
  // compensating -c(x) into the surrounding sum.  Even multiples of an s
  // addend move out whole: c(2q*s(x) + y) = q*s(x) + c(y).
  SumList rest;
  rest.reserve(l.size());
  SumList merged_inners;
  for (auto& e : l) {
    if (e.term->kind != Kind::SNode) {
      rest.push_back(std::move(e));
      continue;
    }
    std::int64_t q = div2_floor(e.coeff);
    if (q != 0) extracted = merge(extracted, single(e.term, q));
    if (e.coeff - 2 * q == 1) {
      SumList inner = flatten_args(e.term->args);
      merged_inners = merge(merged_inners, inner);
      TermPtr comp = mk_c(std::move(inner));
      extracted = merge(extracted, negated(to_sumlist(comp)));
    }
  }
  l = merge(rest, merged_inners);
  fold_consts(l);

  // c(2x + y) = x + c(y): floor-extract every coefficient (covers both the
  // duplicate and the negative-addend cases).
  DedupForC split = dedup_for_c(l);
  extracted = merge(extracted, split.extracted);
  l = std::move(split.remaining);

  BigInt const_q = floor_div2(cpart);
  cpart = floor_mod2(cpart);
  if (const_q != 0)
    extracted = merge(extracted, single(builder_.constant(const_q)));

  // Residual reductions: c of a lone certified bit is 0, and c(t + 1) = t
  // for a certified bit t.
  if (cpart == 1 && l.size() == 1 && l[0].term->kind != Kind::CNode &&
      shape_certified_bit(*l[0].term)) {
    extracted = merge(extracted, l);
    l.clear();
    cpart = 0;
  }
  TermPtr residual;
  if (l.empty()) {
    // c of a constant bit is 0.
  } else if (cpart == 0 && l.size() == 1 && l[0].term->kind != Kind::CNode &&
             shape_certified_bit(*l[0].term)) {
    // c of a lone bit is 0.
  } else {
    if (cpart == 1) l = merge(l, single(builder_.constant(1)));
    residual = builder_.cnode(partition_args(std::move(l)));
  }

  SumList result = residual ? merge(extracted, single(residual)) : std::move(extracted);
  if (result.empty()) return builder_.constant(0);
  if (result.size() == 1 && result[0].coeff == 1) return result[0].term;
  return builder_.sum_term(std::move(result));
}

// ---------------------------------------------------------------------------
// Boolean arithmetization.

SumList RewriteEngine::poly_mul(const SumList& p, const SumList& q) {
  SumList out;
  for (const auto& ep : p) {
    SumList row;
    for (const auto& eq : q) {
      std::int64_t k = ep.coeff * eq.coeff;
      std::vector<TermPtr> lits;
      BigInt cfactor = 1;
      for (const TermPtr& t : {ep.term, eq.term}) {
        switch (t->kind) {
          case Kind::Var:
            lits.push_back(t);
            break;
          case Kind::AndProduct:
            lits.insert(lits.end(), t->children.begin(), t->children.end());
            break;
          case Kind::Const:
            cfactor *= t->value;
            break;
          default:
            throw RewriteError("NonBitOperand: monomial factor is not a partial product");
        }
      }
      if (cfactor == 0) continue;
      k *= static_cast<std::int64_t>(cfactor);
      TermPtr mono;
      if (lits.empty())
        mono = builder_.constant(1);
      else if (lits.size() == 1)
        mono = lits.front();
      else
        mono = builder_.and_product(std::move(lits));
      row = merge(row, single(std::move(mono), k));
    }
    out = merge(out, row);
  }
  return out;
}

SumList RewriteEngine::bool_to_arith(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Const:
      if (t->value == 0) return {};
      if (t->value == 1) return single(t);
      throw RewriteError("NonBitOperand: constant " + t->value.str() +
                         " used as a Boolean value");
    case Kind::Var:
    case Kind::AndProduct:
      return single(t);
    case Kind::Bitp:
      return bool_to_arith(t->children.front());
    case Kind::Sum: {
      for (const auto& e : t->sum) {
        Kind k = e.term->kind;
        if (k != Kind::Var && k != Kind::AndProduct && k != Kind::Const)
          throw RewriteError("NonBitOperand: summation addend is not a partial product");
      }
      return t->sum;
    }
    case Kind::SNode:
    case Kind::CNode:
      throw RewriteError("NonBitOperand: s/c node used as a raw gate operand");
    case Kind::Gate:
      break;
  }

  ++stats_.gate_arith;
  std::vector<SumList> ops;
  ops.reserve(t->children.size());
  for (const auto& c : t->children) ops.push_back(bool_to_arith(c));

  switch (t->op) {
    case GateOp::Not: {
      if (ops.size() != 1) throw RewriteError("NOT expects one operand");
      return merge(single(builder_.constant(1)), negated(std::move(ops[0])));
    }
    case GateOp::And: {
      SumList acc = single(builder_.constant(1));
      for (auto& p : ops) acc = poly_mul(acc, p);
      return acc;
    }
    case GateOp::Or: {
      // x | y = x + y - xy, folded left.
      SumList acc;
      bool first = true;
      for (auto& p : ops) {
        if (first) {
          acc = std::move(p);
          first = false;
        } else {
          SumList prod = poly_mul(acc, p);
          acc = merge(merge(acc, p), negated(std::move(prod)));
        }
      }
      return acc;
    }
    case GateOp::Xor: {
      // x ^ y = x + y - 2xy, folded left.
      SumList acc;
      bool first = true;
      for (auto& p : ops) {
        if (first) {
          acc = std::move(p);
          first = false;
        } else {
          SumList prod = poly_mul(acc, p);
          for (auto& e : prod) e.coeff *= -2;
          acc = merge(merge(acc, p), prod);
        }
      }
      return acc;
    }
  }
  throw RewriteError("unreachable gate op");
}

}  // namespace mulrw
