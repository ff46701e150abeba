#include "mulrw/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mulrw {

// ---------------------------------------------------------------------------
// Hashing.  splitmix64 finalizer on each ingredient, folded left to right.
// The exact function is fixed so canonical forms are reproducible across
// runs; see README for the definition.

static std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine_hash(std::uint64_t seed, std::uint64_t v) {
  return splitmix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

std::uint64_t hash_bytes(const void* data, std::size_t len) {
  // FNV-1a, then finalized; std::hash is not guaranteed stable across runs.
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

static std::uint64_t hash_bigint(const BigInt& v) {
  const std::string s = v.str();
  return hash_bytes(s.data(), s.size());
}

static std::uint64_t hash_sumlist(std::uint64_t h, const SumList& l) {
  for (const auto& e : l) {
    h = combine_hash(h, static_cast<std::uint64_t>(e.coeff));
    h = combine_hash(h, e.term->hash);
  }
  return h;
}

static constexpr std::uint64_t kTagSeed[] = {
    0x01c0457u,  // Const
    0x11a7e5bu,  // Var
    0x2a9dc11u,  // AndProduct
    0x35eed27u,  // SNode
    0x4cc00ddu,  // CNode
    0x55335f1u,  // Sum
    0x66a7e00u,  // Gate
    0x7b17b17u,  // Bitp
};

static std::uint64_t tag_seed(Kind k) {
  return splitmix64(kTagSeed[static_cast<int>(k)]);
}

std::uint64_t recompute_hash(const Term& t) {
  std::uint64_t h = tag_seed(t.kind);
  switch (t.kind) {
    case Kind::Const:
      return combine_hash(h, hash_bigint(t.value));
    case Kind::Var:
      h = combine_hash(h, hash_bytes(t.name.data(), t.name.size()));
      return combine_hash(h, static_cast<std::uint64_t>(t.index));
    case Kind::Gate:
      h = combine_hash(h, static_cast<std::uint64_t>(t.op));
      [[fallthrough]];
    case Kind::AndProduct:
    case Kind::Bitp:
      for (const auto& c : t.children) h = combine_hash(h, c->hash);
      return h;
    case Kind::Sum:
      return hash_sumlist(h, t.sum);
    case Kind::SNode:
    case Kind::CNode:
      h = hash_sumlist(h, t.args.s_args);
      h = hash_sumlist(h, t.args.pp_args);
      h = hash_sumlist(h, t.args.c_args);
      return h;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Builder.

TermPtr TermBuilder::var(std::string name, int index) const {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(name);
  t->index = index;
  t->hash = finish(recompute_hash(*t));
  return t;
}

TermPtr TermBuilder::constant(BigInt v) const {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Const;
  t->value = std::move(v);
  t->hash = finish(recompute_hash(*t));
  return t;
}

TermPtr TermBuilder::gate(GateOp op, std::vector<TermPtr> children) const {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Gate;
  t->op = op;
  t->children = std::move(children);
  t->hash = finish(recompute_hash(*t));
  return t;
}

TermPtr TermBuilder::and_product(std::vector<TermPtr> literals) const {
  for (const auto& l : literals) {
    if (l->kind != Kind::Var)
      throw std::invalid_argument("and_product literal must be a Var");
  }
  std::sort(literals.begin(), literals.end(),
            [](const TermPtr& a, const TermPtr& b) { return term_compare(a, b) < 0; });
  literals.erase(std::unique(literals.begin(), literals.end(),
                             [](const TermPtr& a, const TermPtr& b) {
                               return term_compare(a, b) == 0;
                             }),
                 literals.end());
  if (literals.empty())
    throw std::invalid_argument("and_product needs at least one literal");
  // x*x = x for bits: a deduplicated single-literal product is the literal.
  if (literals.size() == 1) return literals.front();
  auto t = std::make_shared<Term>();
  t->kind = Kind::AndProduct;
  t->children = std::move(literals);
  t->hash = finish(recompute_hash(*t));
  return t;
}

TermPtr TermBuilder::snode(SCArgs args) const {
  auto t = std::make_shared<Term>();
  t->kind = Kind::SNode;
  t->args = std::move(args);
  t->hash = finish(recompute_hash(*t));
  return t;
}

TermPtr TermBuilder::cnode(SCArgs args) const {
  auto t = std::make_shared<Term>();
  t->kind = Kind::CNode;
  t->args = std::move(args);
  t->hash = finish(recompute_hash(*t));
  return t;
}

TermPtr TermBuilder::sum_term(SumList entries) const {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Sum;
  t->sum = std::move(entries);
  t->hash = finish(recompute_hash(*t));
  return t;
}

TermPtr TermBuilder::bitp(TermPtr inner) const {
  if (inner->kind == Kind::Bitp) return inner;  // never wrap twice
  auto t = std::make_shared<Term>();
  t->kind = Kind::Bitp;
  t->children.push_back(std::move(inner));
  t->hash = finish(recompute_hash(*t));
  return t;
}

// ---------------------------------------------------------------------------
// Ordering.

CompareCounters& compare_counters() {
  thread_local CompareCounters c;
  return c;
}

static int compare_sumlists(const SumList& a, const SumList& b);

static int structural_compare(const Term& a, const Term& b) {
  if (a.kind != b.kind)
    return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  switch (a.kind) {
    case Kind::Const:
      return a.value == b.value ? 0 : (a.value < b.value ? -1 : 1);
    case Kind::Var: {
      if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
      return a.index == b.index ? 0 : (a.index < b.index ? -1 : 1);
    }
    case Kind::Gate:
      if (a.op != b.op) return a.op < b.op ? -1 : 1;
      [[fallthrough]];
    case Kind::AndProduct:
    case Kind::Bitp: {
      if (a.children.size() != b.children.size())
        return a.children.size() < b.children.size() ? -1 : 1;
      for (std::size_t i = 0; i < a.children.size(); ++i)
        if (int c = term_compare(*a.children[i], *b.children[i])) return c;
      return 0;
    }
    case Kind::Sum:
      return compare_sumlists(a.sum, b.sum);
    case Kind::SNode:
    case Kind::CNode: {
      if (int c = compare_sumlists(a.args.s_args, b.args.s_args)) return c;
      if (int c = compare_sumlists(a.args.pp_args, b.args.pp_args)) return c;
      return compare_sumlists(a.args.c_args, b.args.c_args);
    }
  }
  return 0;
}

static int compare_sumlists(const SumList& a, const SumList& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].coeff != b[i].coeff) return a[i].coeff < b[i].coeff ? -1 : 1;
    if (int c = term_compare(*a[i].term, *b[i].term)) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int term_compare(const Term& a, const Term& b) {
  if (&a == &b) return 0;
  auto& cc = compare_counters();
  ++cc.total;
  if (a.hash != b.hash) {
    ++cc.hash_fast_path;
    return a.hash < b.hash ? -1 : 1;
  }
  ++cc.structural;
  return structural_compare(a, b);
}

bool sorted_and_unique(const SumList& l) {
  for (const auto& e : l)
    if (e.coeff == 0) return false;
  for (std::size_t i = 1; i < l.size(); ++i)
    if (term_compare(*l[i - 1].term, *l[i].term) >= 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation.

BigInt floor_mod2(const BigInt& x) {
  BigInt r = x % 2;
  if (r < 0) r += 2;
  return r;
}

BigInt floor_div2(const BigInt& x) {
  return (x - floor_mod2(x)) / 2;
}

namespace {

struct Evaluator {
  const EvalEnv& env;
  std::map<const Term*, BigInt> memo;

  BigInt sum(const SumList& l) {
    BigInt acc = 0;
    for (const auto& e : l) acc += BigInt(e.coeff) * eval(*e.term);
    return acc;
  }

  BigInt bit_of(const Term& t) {
    BigInt v = eval(t);
    if (v != 0 && v != 1)
      throw EvalError("non-bit value feeding a Gate: " + v.str());
    return v;
  }

  BigInt eval(const Term& t) {
    auto it = memo.find(&t);
    if (it != memo.end()) return it->second;
    BigInt v;
    switch (t.kind) {
      case Kind::Const:
        v = t.value;
        break;
      case Kind::Var: {
        auto e = env.find({t.name, t.index});
        if (e == env.end())
          throw EvalError("unbound variable " + t.name + "[" +
                          std::to_string(t.index) + "]");
        v = e->second;
        break;
      }
      case Kind::AndProduct: {
        v = 1;
        for (const auto& c : t.children) v *= bit_of(*c);
        break;
      }
      case Kind::Gate: {
        switch (t.op) {
          case GateOp::Not:
            v = 1 - bit_of(*t.children.at(0));
            break;
          case GateOp::And: {
            v = 1;
            for (const auto& c : t.children) v *= bit_of(*c);
            break;
          }
          case GateOp::Or: {
            v = 0;
            for (const auto& c : t.children)
              if (bit_of(*c) == 1) v = 1;
            break;
          }
          case GateOp::Xor: {
            v = 0;
            for (const auto& c : t.children) v ^= bit_of(*c);
            break;
          }
        }
        break;
      }
      case Kind::Sum:
        v = sum(t.sum);
        break;
      case Kind::SNode:
        v = floor_mod2(sum(t.args.s_args) + sum(t.args.pp_args) +
                       sum(t.args.c_args));
        break;
      case Kind::CNode:
        v = floor_div2(sum(t.args.s_args) + sum(t.args.pp_args) +
                       sum(t.args.c_args));
        break;
      case Kind::Bitp:
        v = eval(*t.children.at(0));
        break;
    }
    memo.emplace(&t, v);
    return v;
  }
};

}  // namespace

BigInt eval_term(const TermPtr& t, const EvalEnv& env) {
  Evaluator e{env, {}};
  return e.eval(*t);
}

BigInt eval_sum(const SumList& l, const EvalEnv& env) {
  Evaluator e{env, {}};
  return e.sum(l);
}

// ---------------------------------------------------------------------------
// Printing.

static void print_term(std::ostream& os, const Term& t);

static void print_entry(std::ostream& os, const SumEntry& e) {
  if (e.coeff != 1) os << e.coeff << "*";
  print_term(os, *e.term);
}

static void print_sum_body(std::ostream& os, const SCArgs& a) {
  // Re-merge the partitioned lists into one sorted sequence for display.
  std::vector<const SumEntry*> all;
  for (const auto& e : a.s_args) all.push_back(&e);
  for (const auto& e : a.pp_args) all.push_back(&e);
  for (const auto& e : a.c_args) all.push_back(&e);
  std::sort(all.begin(), all.end(), [](const SumEntry* x, const SumEntry* y) {
    return term_compare(*x->term, *y->term) < 0;
  });
  os << "(+";
  for (const auto* e : all) {
    os << " ";
    print_entry(os, *e);
  }
  os << ")";
}

static void print_term(std::ostream& os, const Term& t) {
  switch (t.kind) {
    case Kind::Const:
      os << t.value.str();
      break;
    case Kind::Var:
      os << t.name << "[" << t.index << "]";
      break;
    case Kind::AndProduct: {
      os << "(and*";
      for (const auto& c : t.children) {
        os << " ";
        print_term(os, *c);
      }
      os << ")";
      break;
    }
    case Kind::Gate: {
      static const char* names[] = {"not", "and", "or", "xor"};
      os << "(" << names[static_cast<int>(t.op)];
      for (const auto& c : t.children) {
        os << " ";
        print_term(os, *c);
      }
      os << ")";
      break;
    }
    case Kind::Sum: {
      os << "(+";
      for (const auto& e : t.sum) {
        os << " ";
        print_entry(os, e);
      }
      os << ")";
      break;
    }
    case Kind::SNode:
      os << "(s ";
      print_sum_body(os, t.args);
      os << ")";
      break;
    case Kind::CNode:
      os << "(c ";
      print_sum_body(os, t.args);
      os << ")";
      break;
    case Kind::Bitp:
      os << "(bitp ";
      print_term(os, *t.children.at(0));
      os << ")";
      break;
  }
}

std::string term_to_string(const TermPtr& t) {
  std::ostringstream os;
  print_term(os, *t);
  return os.str();
}

std::string sum_to_string(const SumList& l) {
  std::ostringstream os;
  os << "(+";
  for (const auto& e : l) {
    os << " ";
    print_entry(os, e);
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of input");
    return s[pos];
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "' at offset " +
                       std::to_string(pos));
    ++pos;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
            s[pos] == '*' || s[pos] == '+'))
      ++pos;
    if (start == pos) throw ParseError("expected identifier at offset " + std::to_string(pos));
    return s.substr(start, pos - start);
  }
  BigInt integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw ParseError("expected integer at offset " + std::to_string(pos));
    return BigInt(s.substr(start, pos - start));
  }
};

struct Parser {
  Lexer lx;
  const TermBuilder& b;

  static bool is_int_start(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-'; }

  TermPtr term() {
    char c = lx.peek();
    if (c == '(') return sexpr();
    if (is_int_start(c)) return b.constant(lx.integer());
    return variable();
  }

  TermPtr variable() {
    std::string name = lx.ident();
    int idx = 0;
    if (!lx.at_end() && lx.peek() == '[') {
      lx.expect('[');
      idx = static_cast<int>(lx.integer());
      lx.expect(']');
    }
    return b.var(name, idx);
  }

  SumEntry entry() {
    char c = lx.peek();
    if (is_int_start(c)) {
      // Could be "k*term" or a bare constant addend.
      BigInt k = lx.integer();
      if (!lx.at_end() && lx.peek() == '*') {
        lx.expect('*');
        return {static_cast<std::int64_t>(k), term()};
      }
      return {1, b.constant(k)};
    }
    return {1, term()};
  }

  SumList sum_body() {
    lx.expect('(');
    std::string head = lx.ident();
    if (head != "+") throw ParseError("expected (+ ...) summation");
    SumList l;
    while (lx.peek() != ')') l.push_back(entry());
    lx.expect(')');
    return l;
  }

  static SCArgs partition(SumList l) {
    std::sort(l.begin(), l.end(), [](const SumEntry& a, const SumEntry& b) {
      return term_compare(*a.term, *b.term) < 0;
    });
    SCArgs a;
    for (auto& e : l) {
      switch (e.term->kind) {
        case Kind::SNode:
          a.s_args.push_back(std::move(e));
          break;
        case Kind::CNode:
          a.c_args.push_back(std::move(e));
          break;
        default:
          a.pp_args.push_back(std::move(e));
          break;
      }
    }
    return a;
  }

  TermPtr sexpr() {
    lx.expect('(');
    std::string head = lx.ident();
    TermPtr result;
    if (head == "s") {
      result = b.snode(partition(sum_body()));
    } else if (head == "c") {
      result = b.cnode(partition(sum_body()));
    } else if (head == "bitp") {
      result = b.bitp(term());
    } else if (head == "and*") {
      std::vector<TermPtr> lits;
      while (lx.peek() != ')') lits.push_back(term());
      result = b.and_product(std::move(lits));
    } else if (head == "+") {
      SumList l;
      while (lx.peek() != ')') l.push_back(entry());
      std::sort(l.begin(), l.end(), [](const SumEntry& a, const SumEntry& b) {
        return term_compare(*a.term, *b.term) < 0;
      });
      result = b.sum_term(std::move(l));
    } else if (head == "not" || head == "and" || head == "or" || head == "xor") {
      GateOp op = head == "not" ? GateOp::Not
                : head == "and" ? GateOp::And
                : head == "or"  ? GateOp::Or
                                : GateOp::Xor;
      std::vector<TermPtr> cs;
      while (lx.peek() != ')') cs.push_back(term());
      result = b.gate(op, std::move(cs));
    } else {
      throw ParseError("unknown operator: " + head);
    }
    lx.expect(')');
    return result;
  }
};

}  // namespace

TermPtr parse_term(const std::string& text, const TermBuilder& b) {
  Parser p{Lexer{text}, b};
  TermPtr t = p.term();
  if (!p.lx.at_end()) throw ParseError("trailing input after term");
  return t;
}

// ---------------------------------------------------------------------------
// Helpers.

bool is_const(const Term& t, int v) {
  return t.kind == Kind::Const && t.value == v;
}

bool shape_certified_bit(const Term& t) {
  switch (t.kind) {
    case Kind::Bitp:
    case Kind::Var:
    case Kind::AndProduct:
    case Kind::SNode:
      return true;
    case Kind::Const:
      return t.value == 0 || t.value == 1;
    default:
      return false;
  }
}

const TermPtr& strip_bitp(const TermPtr& t) {
  return t->kind == Kind::Bitp ? t->children.front() : t;
}

}  // namespace mulrw
