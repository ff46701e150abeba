#include "mulrw/proptest.hpp"

namespace mulrw {

namespace {

const char* kVars[] = {"a", "b"};
constexpr int kPoolWidth = 4;

std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t TermGen::next() { return splitmix(state_); }

std::int64_t TermGen::coeff() {
  std::int64_t k = static_cast<std::int64_t>(next() % 9) - 4;
  return k == 0 ? 1 : k;
}

TermPtr TermGen::term(int depth) {
  const int kinds = depth > 0 ? 5 : 2;
  switch (next() % kinds) {
    case 0:
      return b_->var(kVars[next() % 2], static_cast<int>(next() % kPoolWidth));
    case 1: {
      std::vector<TermPtr> lits;
      int len = 1 + static_cast<int>(next() % 3);
      for (int i = 0; i < len; ++i)
        lits.push_back(
            b_->var(kVars[next() % 2], static_cast<int>(next() % kPoolWidth)));
      return b_->and_product(std::move(lits));
    }
    case 2:
      return rw_->mk_s(sum(depth - 1, 4));
    case 3: {
      // mk_c may collapse to a Sum/Const; re-draw as a bit-shaped term then.
      TermPtr c = rw_->mk_c(sum(depth - 1, 4));
      if (c->kind == Kind::CNode || c->kind == Kind::Var ||
          c->kind == Kind::AndProduct)
        return c;
      return term(0);
    }
    default:
      return b_->constant(static_cast<int>(next() % 2));
  }
}

SumList TermGen::sum(int depth, int max_len) {
  SumList l;
  int len = 1 + static_cast<int>(next() % max_len);
  for (int i = 0; i < len; ++i) {
    TermPtr t = term(depth);
    if (t->kind == Kind::Bitp) t = t->children.front();
    l = merge_sum(l, SumList{{coeff(), std::move(t)}});
  }
  return l;
}

EvalEnv TermGen::bit_env() {
  EvalEnv env;
  for (const char* v : kVars)
    for (int i = 0; i < kPoolWidth; ++i)
      env[{v, i}] = static_cast<int>(next() % 2);
  return env;
}

namespace {

BigInt rand_int(std::uint64_t& s) {
  // Signed, up to ~128 bits.
  BigInt v = 0;
  int words = 1 + static_cast<int>(splitmix(s) % 2);
  for (int i = 0; i < words; ++i)
    v = (v << 64) | BigInt(splitmix(s));
  if (splitmix(s) % 2) v = -v;
  return v;
}

struct Suite {
  std::uint64_t seed;
  unsigned long long trials;
  std::vector<RuleResult> results;

  void numeric(const std::string& name,
               bool (*prop)(const BigInt&, const BigInt&)) {
    RuleResult r;
    r.name = name;
    std::uint64_t s = seed ^ hash_bytes(name.data(), name.size());
    for (unsigned long long i = 0; i < trials; ++i) {
      BigInt x = rand_int(s), y = rand_int(s);
      ++r.trials;
      if (!prop(x, y)) {
        ++r.failures;
        if (r.first_failure.empty())
          r.first_failure = "x=" + x.str() + " y=" + y.str();
      }
    }
    results.push_back(std::move(r));
  }

  template <typename F>
  void structural(const std::string& name, F check) {
    RuleResult r;
    r.name = name;
    TermBuilder b;
    RewriteEngine rw;
    TermGen gen(seed ^ hash_bytes(name.data(), name.size()), b, rw);
    for (unsigned long long i = 0; i < trials; ++i) {
      ++r.trials;
      std::string repro;
      if (!check(gen, rw, repro)) {
        ++r.failures;
        if (r.first_failure.empty()) r.first_failure = repro;
      }
    }
    results.push_back(std::move(r));
  }

  void boolean_gate(const std::string& name, GateOp op,
                    int (*truth)(int, int)) {
    RuleResult r;
    r.name = name;
    TermBuilder b;
    RewriteEngine rw;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        ++r.trials;
        EvalEnv env{{{"a", 0}, x}, {{"b", 0}, y}};
        std::vector<TermPtr> ops{b.var("a", 0)};
        if (op != GateOp::Not) ops.push_back(b.var("b", 0));
        BigInt got = eval_sum(rw.bool_to_arith(b.gate(op, ops)), env);
        if (got != truth(x, y)) {
          ++r.failures;
          if (r.first_failure.empty())
            r.first_failure =
                "x=" + std::to_string(x) + " y=" + std::to_string(y);
        }
      }
    results.push_back(std::move(r));
  }
};

}  // namespace

std::vector<RuleResult> rule_suite(std::uint64_t seed,
                                     unsigned long long trials) {
  Suite st{seed, trials, {}};

  // Gate arithmetization, exhausted over the Boolean square.
  st.boolean_gate("not-gate-arith", GateOp::Not,
                  [](int x, int) { return 1 - x; });
  st.boolean_gate("or-gate-arith", GateOp::Or,
                  [](int x, int y) { return x + y - x * y; });
  st.boolean_gate("xor-gate-arith", GateOp::Xor,
                  [](int x, int y) { return x + y - 2 * x * y; });

  // Numeric identities behind the constructors.
  st.numeric("quotient-remainder-identity", [](const BigInt& x, const BigInt&) {
    return 2 * floor_div2(x) + floor_mod2(x) == x;
  });
  st.numeric("s-negation", [](const BigInt& x, const BigInt& y) {
    return floor_mod2(-x + y) == floor_mod2(x + y);
  });
  st.numeric("c-negation", [](const BigInt& x, const BigInt& y) {
    return floor_div2(-x + y) == -x + floor_div2(x + y);
  });
  st.numeric("s-duplicates", [](const BigInt& x, const BigInt& y) {
    return floor_mod2(x + x + y) == floor_mod2(y);
  });
  st.numeric("c-duplicates", [](const BigInt& x, const BigInt& y) {
    return floor_div2(x + x + y) == x + floor_div2(y);
  });
  st.numeric("s-flattening", [](const BigInt& x, const BigInt& y) {
    return floor_mod2(floor_mod2(x) + y) == floor_mod2(x + y);
  });
  st.numeric("c-flattening", [](const BigInt& x, const BigInt& y) {
    return floor_div2(floor_mod2(x) + y) ==
           floor_div2(x + y) - floor_div2(x);
  });

  // Constructor soundness on random canonical term lists under bit
  // environments: the structural counterpart of the identities above.
  st.structural("mk-s-sound",
                [](TermGen& g, RewriteEngine& rw, std::string& repro) {
                  SumList l = g.sum(2, 5);
                  EvalEnv env = g.bit_env();
                  TermPtr s = rw.mk_s(l);
                  bool ok = eval_term(s, env) == floor_mod2(eval_sum(l, env));
                  if (!ok) repro = sum_to_string(l);
                  return ok;
                });
  st.structural("mk-c-sound",
                [](TermGen& g, RewriteEngine& rw, std::string& repro) {
                  SumList l = g.sum(2, 5);
                  EvalEnv env = g.bit_env();
                  TermPtr c = rw.mk_c(l);
                  bool ok = eval_term(c, env) == floor_div2(eval_sum(l, env));
                  if (!ok) repro = sum_to_string(l);
                  return ok;
                });
  st.structural("merge-sound",
                [](TermGen& g, RewriteEngine& rw, std::string& repro) {
                  SumList a = g.sum(1, 4), b = g.sum(1, 4);
                  EvalEnv env = g.bit_env();
                  SumList m = rw.merge(a, b);
                  bool ok = sorted_and_unique(m) &&
                            eval_sum(m, env) ==
                                eval_sum(a, env) + eval_sum(b, env);
                  if (!ok) repro = sum_to_string(a) + " ++ " + sum_to_string(b);
                  return ok;
                });

  return st.results;
}

}  // namespace mulrw
