#include "mulrw/specgen.hpp"

namespace mulrw {

std::vector<SumList> spec_columns(const SpecDescriptor& d, RewriteEngine& rw) {
  const TermBuilder& b = rw.builder();
  const int outw = spec_out_width(d);
  std::vector<SumList> cols(outw);
  auto add = [&](int k, std::int64_t coeff, TermPtr t) {
    if (k >= outw) return;
    cols[k] = rw.merge(cols[k], SumList{{coeff, std::move(t)}});
  };
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.m; ++j) {
      const bool neg = (d.a_signed && i == d.n - 1) != (d.b_signed && j == d.m - 1);
      add(i + j, neg ? -1 : 1,
          b.and_product({b.var("a", i), b.var("b", j)}));
    }
  }
  if (d.op == SpecOp::Mac)
    for (int k = 0; k < outw; ++k) add(k, 1, b.var("acc", k));
  return cols;
}

std::vector<TermPtr> build_spec(const SpecDescriptor& d, RewriteEngine& rw) {
  std::vector<SumList> cols = spec_columns(d, rw);
  std::vector<TermPtr> out;
  out.reserve(cols.size());
  SumList carry;
  for (auto& col : cols) {
    SumList sum = rw.merge(col, carry);
    out.push_back(rw.mk_s(sum));
    carry = to_sumlist(rw.mk_c(std::move(sum)));
  }
  return out;
}

namespace {

BigInt trunc(const BigInt& v, int width) {
  BigInt p = BigInt(1) << width;
  BigInt r = v % p;
  if (r < 0) r += p;
  return r;
}

BigInt extend(const BigInt& v, int width, bool is_signed) {
  BigInt r = trunc(v, width);
  if (is_signed && width > 0 && ((r >> (width - 1)) & 1) != 0)
    r -= BigInt(1) << width;
  return r;
}

}  // namespace

BigInt eval_spec_integer(const SpecDescriptor& d, const BigInt& a,
                         const BigInt& b, const BigInt& acc) {
  const int outw = spec_out_width(d);
  BigInt r = extend(a, d.n, d.a_signed) * extend(b, d.m, d.b_signed);
  if (d.op == SpecOp::Mac) r += trunc(acc, outw);
  return trunc(r, outw);
}

}  // namespace mulrw
