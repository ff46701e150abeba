// Canonical specification terms for multiply / multiply-accumulate: the
// column-recursive quotient-remainder form that every correct design's
// symbolic simulation must reach syntactically.
#pragma once

#include "mulrw/rewrite.hpp"

namespace mulrw {

enum class SpecOp { Mult, Mac };

struct SpecDescriptor {
  SpecOp op = SpecOp::Mult;
  int n = 0;                 // width of operand a
  int m = 0;                 // width of operand b
  bool a_signed = false;
  bool b_signed = false;
  int out_width = 0;         // 0: defaults to n + m
};

inline int spec_out_width(const SpecDescriptor& d) {
  return d.out_width > 0 ? d.out_width : d.n + d.m;
}

// Partial-product columns of the spec: column k holds the signed-coefficient
// a_i*b_j entries with i + j = k (Baugh-Wooley sign convention: coefficient
// -1 when exactly one of the operands contributes its sign bit), plus the
// accumulator bit for MAC.  Shared ground truth for the reduction below.
std::vector<SumList> spec_columns(const SpecDescriptor& d, RewriteEngine& rw);

// Canonical output bit terms, little-endian, out_width entries: the columns
// reduced with the s/c constructors, carries rippled column to column.
std::vector<TermPtr> build_spec(const SpecDescriptor& d, RewriteEngine& rw);

// Integer semantics: operands truncated/sign-extended to their widths, acc
// unsigned, result reduced mod 2^out_width (non-negative).
BigInt eval_spec_integer(const SpecDescriptor& d, const BigInt& a,
                         const BigInt& b, const BigInt& acc = 0);

}  // namespace mulrw
