#include "cmc1/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace cmc1 {

enum class Op { Var, Const, Add, Sub, Mul, Div, Neg, IPow, Pow, Log, Exp, Tan, Sqrt };

struct ExprFunction::Node {
  Op op = Op::Var;
  Complex value{};
  std::optional<GaussRational> exact;  // constants only
  std::string literal;                 // constants only, as written
  int power = 0;                       // IPow only
  int slot = -1;                       // Log, Pow, Sqrt
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using MutableNode = ExprFunction::Node;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::shared_ptr<MutableNode> parse_all() {
    auto n = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view atom() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected atom");
    return text_.substr(start, pos_ - start);
  }

  std::shared_ptr<MutableNode> parse_expr() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') return parse_atom(atom());
    ++pos_;
    const std::string head(atom());
    std::vector<std::shared_ptr<MutableNode>> args;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      args.push_back(parse_expr());
    }
    return build(head, std::move(args));
  }

  std::shared_ptr<MutableNode> parse_atom(std::string_view a) {
    auto n = std::make_shared<MutableNode>();
    if (a == "z") {
      n->op = Op::Var;
      return n;
    }
    n->op = Op::Const;
    n->literal = std::string(a);
    bool imaginary = false;
    if (a.back() == 'i') {
      imaginary = true;
      a.remove_suffix(1);
    }
    Rational q(1);
    if (!a.empty() && a != "+" && a != "-") {
      try {
        q = parse_rational(a);
      } catch (const std::invalid_argument&) {
        fail("unknown symbol '" + n->literal + "'");
      }
    } else if (a == "-") {
      q = -1;
    } else if (!imaginary) {
      fail("unknown symbol '" + n->literal + "'");
    }
    n->exact = imaginary ? GaussRational(Rational(0), q) : GaussRational(q);
    n->value = n->exact->to_complex();
    return n;
  }

  std::shared_ptr<MutableNode> build(const std::string& head, std::vector<std::shared_ptr<MutableNode>> args) {
    auto n = std::make_shared<MutableNode>();
    auto arity = [&](std::size_t k) {
      if (args.size() != k) fail("'" + head + "' takes " + std::to_string(k) + " argument(s)");
    };
    if (head == "+" || head == "*") {
      if (args.empty()) fail("'" + head + "' needs arguments");
      const Op op = head == "+" ? Op::Add : Op::Mul;
      std::shared_ptr<MutableNode> acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) {
        auto m = std::make_shared<MutableNode>();
        m->op = op;
        m->kids = {acc, args[i]};
        acc = m;
      }
      return acc;
    }
    if (head == "-") {
      if (args.size() == 1) {
        n->op = Op::Neg;
      } else {
        arity(2);
        n->op = Op::Sub;
      }
    } else if (head == "/") {
      arity(2);
      n->op = Op::Div;
    } else if (head == "neg") {
      arity(1);
      n->op = Op::Neg;
    } else if (head == "^") {
      arity(2);
      const auto& e = args[1];
      if (e->op != Op::Const || !e->exact || !e->exact->is_real() || e->exact->real().get_den() != 1)
        fail("'^' needs an integer literal exponent");
      n->op = Op::IPow;
      n->power = static_cast<int>(e->exact->real().get_num().get_si());
      args.pop_back();
    } else if (head == "pow") {
      arity(2);
      n->op = Op::Pow;
    } else if (head == "log" || head == "exp" || head == "tan" || head == "sqrt") {
      arity(1);
      n->op = head == "log" ? Op::Log : head == "exp" ? Op::Exp : head == "tan" ? Op::Tan : Op::Sqrt;
    } else {
      fail("unknown operator '" + head + "'");
    }
    n->kids.assign(args.begin(), args.end());
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int assign_slots(MutableNode& n, int next) {
  for (auto& k : n.kids) next = assign_slots(const_cast<MutableNode&>(*k), next);
  if (n.op == Op::Log || n.op == Op::Pow || n.op == Op::Sqrt) n.slot = next++;
  return next;
}

void print(const ExprFunction::Node& n, std::ostream& os) {
  auto unary = [&](const char* name) {
    os << '(' << name << ' ';
    print(*n.kids[0], os);
    os << ')';
  };
  auto binary = [&](const char* name) {
    os << '(' << name << ' ';
    print(*n.kids[0], os);
    os << ' ';
    print(*n.kids[1], os);
    os << ')';
  };
  switch (n.op) {
    case Op::Var: os << 'z'; break;
    case Op::Const: os << n.literal; break;
    case Op::Add: binary("+"); break;
    case Op::Sub: binary("-"); break;
    case Op::Mul: binary("*"); break;
    case Op::Div: binary("/"); break;
    case Op::Neg: unary("neg"); break;
    case Op::IPow:
      os << "(^ ";
      print(*n.kids[0], os);
      os << ' ' << n.power << ')';
      break;
    case Op::Pow: binary("pow"); break;
    case Op::Log: unary("log"); break;
    case Op::Exp: unary("exp"); break;
    case Op::Tan: unary("tan"); break;
    case Op::Sqrt: unary("sqrt"); break;
  }
}

// Scalar and jet evaluation share one recursive walker.
inline Complex head(Complex v) { return v; }
template <int N>
Complex head(const Jet<N>& j) {
  return j.value();
}

inline Complex log_on_branch(Complex, Complex log0) { return log0; }
inline Complex tan(Complex v) { return std::tan(v); }
inline Complex exp(Complex v) { return std::exp(v); }

template <class T>
struct Walker {
  Complex z;
  const BranchState& ref;
  BranchState* chosen;

  T constant(Complex c) const {
    if constexpr (std::is_same_v<T, Complex>) {
      return c;
    } else {
      return T::constant(c);
    }
  }
  T var() const {
    if constexpr (std::is_same_v<T, Complex>) {
      return z;
    } else {
      return T::variable(z);
    }
  }

  T branch_log(const T& a, int slot) const {
    const Complex a0 = head(a);
    if (a0 == Complex{}) throw std::domain_error("logarithm at zero");
    Complex l0 = std::log(a0);
    if (slot >= 0 && static_cast<std::size_t>(slot) < ref.size()) {
      const double turns = std::round((ref[static_cast<std::size_t>(slot)] - l0.imag()) / (2.0 * std::numbers::pi));
      l0 += Complex(0.0, 2.0 * std::numbers::pi * turns);
    }
    if (chosen) {
      if (chosen->size() <= static_cast<std::size_t>(slot)) chosen->resize(static_cast<std::size_t>(slot) + 1, 0.0);
      (*chosen)[static_cast<std::size_t>(slot)] = l0.imag();
    }
    return log_on_branch(a, l0);
  }

  T run(const ExprFunction::Node& n) const {
    switch (n.op) {
      case Op::Var: return var();
      case Op::Const: return constant(n.value);
      case Op::Add: return run(*n.kids[0]) + run(*n.kids[1]);
      case Op::Sub: return run(*n.kids[0]) - run(*n.kids[1]);
      case Op::Mul: return run(*n.kids[0]) * run(*n.kids[1]);
      case Op::Div: {
        T den = run(*n.kids[1]);
        if (head(den) == Complex{}) throw std::domain_error("division by zero in expression");
        return run(*n.kids[0]) / den;
      }
      case Op::Neg: return -run(*n.kids[0]);
      case Op::IPow: {
        T base = run(*n.kids[0]);
        T acc = constant(1.0);
        int e = n.power < 0 ? -n.power : n.power;
        while (e > 0) {
          if (e & 1) acc = acc * base;
          base = base * base;
          e >>= 1;
        }
        if (n.power < 0) {
          if (head(acc) == Complex{}) throw std::domain_error("negative power of zero");
          return constant(1.0) / acc;
        }
        return acc;
      }
      case Op::Pow: {
        T l = branch_log(run(*n.kids[0]), n.slot);
        return exp(run(*n.kids[1]) * l);
      }
      case Op::Log: return branch_log(run(*n.kids[0]), n.slot);
      case Op::Exp: return exp(run(*n.kids[0]));
      case Op::Tan: return tan(run(*n.kids[0]));
      case Op::Sqrt: {
        T l = branch_log(run(*n.kids[0]), n.slot);
        return exp(constant(0.5) * l);
      }
    }
    throw std::logic_error("unreachable expression node");
  }
};

std::optional<ExactMap> rational_of(const ExprFunction::Node& n) {
  auto kid = [&](std::size_t i) { return rational_of(*n.kids[i]); };
  switch (n.op) {
    case Op::Var: return ExactMap::identity();
    case Op::Const:
      if (!n.exact) return std::nullopt;
      return ExactMap::constant(*n.exact);
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      auto a = kid(0), b = kid(1);
      if (!a || !b) return std::nullopt;
      if (n.op == Op::Add) return *a + *b;
      if (n.op == Op::Sub) return *a - *b;
      if (n.op == Op::Mul) return *a * *b;
      if (b->is_zero()) return std::nullopt;
      return *a / *b;
    }
    case Op::Neg: {
      auto a = kid(0);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Op::IPow: {
      auto a = kid(0);
      if (!a) return std::nullopt;
      if (n.power < 0 && a->is_zero()) return std::nullopt;
      ExactMap base = n.power < 0 ? ExactMap::constant(GaussRational(1)) / *a : *a;
      ExactMap acc = ExactMap::constant(GaussRational(1));
      for (int k = 0; k < std::abs(n.power); ++k) acc = acc * base;
      return acc;
    }
    default: return std::nullopt;
  }
}

std::shared_ptr<MutableNode> node_of_poly(const ExactPolynomial& p) {
  // Horner form keeps the printed tree linear in the degree.
  auto constant = [](const GaussRational& c) {
    auto n = std::make_shared<MutableNode>();
    n->op = Op::Const;
    n->exact = c;
    n->value = c.to_complex();
    if (c.is_real()) {
      n->literal = to_string(c.real());
    } else if (sgn(c.real()) == 0) {
      n->literal = to_string(c.imag()) + "i";
    }
    return n;
  };
  auto complex_constant = [&](const GaussRational& c) -> std::shared_ptr<MutableNode> {
    if (c.is_real() || sgn(c.real()) == 0) return constant(c);
    auto sum = std::make_shared<MutableNode>();
    sum->op = Op::Add;
    sum->kids = {constant(GaussRational(c.real())), constant(GaussRational(Rational(0), c.imag()))};
    return sum;
  };
  if (p.is_zero()) return constant(GaussRational(0));
  auto acc = complex_constant(p.leading());
  auto z = std::make_shared<MutableNode>();
  z->op = Op::Var;
  for (int k = p.degree() - 1; k >= 0; --k) {
    auto mul = std::make_shared<MutableNode>();
    mul->op = Op::Mul;
    mul->kids = {acc, z};
    auto add = std::make_shared<MutableNode>();
    add->op = Op::Add;
    add->kids = {mul, complex_constant(p.coeff(k))};
    acc = add;
  }
  return acc;
}

}  // namespace

ExprFunction::ExprFunction() : ExprFunction(Parser("z").parse_all()) {}

ExprFunction::ExprFunction(std::shared_ptr<const Node> root) : root_(std::move(root)) {
  slots_ = assign_slots(const_cast<Node&>(*root_), 0);
}

ExprFunction ExprFunction::parse(std::string_view text) { return ExprFunction(Parser(text).parse_all()); }

ExprFunction ExprFunction::variable() { return ExprFunction(); }

ExprFunction ExprFunction::from_rational(const ExactMap& R) {
  auto div = std::make_shared<Node>();
  div->op = Op::Div;
  div->kids = {node_of_poly(R.num()), node_of_poly(R.den())};
  return ExprFunction(div);
}

std::string ExprFunction::str() const {
  std::ostringstream os;
  print(*root_, os);
  return os.str();
}

Complex ExprFunction::eval(Complex z, const BranchState& ref, BranchState* chosen) const {
  return Walker<Complex>{z, ref, chosen}.run(*root_);
}

template <int N>
Jet<N> ExprFunction::jet(Complex z, const BranchState& ref, BranchState* chosen) const {
  return Walker<Jet<N>>{z, ref, chosen}.run(*root_);
}

template Jet<1> ExprFunction::jet<1>(Complex, const BranchState&, BranchState*) const;
template Jet<2> ExprFunction::jet<2>(Complex, const BranchState&, BranchState*) const;
template Jet<3> ExprFunction::jet<3>(Complex, const BranchState&, BranchState*) const;

std::optional<ExactMap> ExprFunction::as_rational() const { return rational_of(*root_); }

Complex schwarzian_at(const ExprFunction& h, Complex z, const BranchState& ref) {
  const Jet<3> j = h.jet<3>(z, ref);
  const Complex d1 = j.derivative(1), d2 = j.derivative(2), d3 = j.derivative(3);
  if (d1 == Complex{}) throw std::domain_error("Schwarzian at a critical point");
  const Complex r = d2 / d1;
  return d3 / d1 - 1.5 * r * r;
}

}  // namespace cmc1
