#pragma once

#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "polyia/series.hpp"

namespace polyia {

// Formulas are data: an Expr is an immutable tree over the variable p, the
// symbol u, rational constants, named bindings, {+, -, x, /, sqrt, integer
// power} and exact division by p^m (ShiftDown). Evaluation is pull-based:
// each node computes exactly the coefficients its requested truncation needs,
// so ShiftDown asks its child for a deeper expansion instead of losing order.
enum class ExprKind { P, U, Const, Named, Add, Sub, Neg, Mul, Div, Sqrt, Pow, ShiftDown };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    Rat value;         // Const
    std::string name;  // Named
    int arg = 0;       // Pow exponent / ShiftDown amount
    Expr a, b;
};

Expr pvar();
Expr uvar();
Expr lit(const Rat& v);
Expr lit(long v);
Expr named(const std::string& name);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr neg(const Expr& a);
Expr sqrt(const Expr& a);
Expr pow(const Expr& a, int k);
Expr shift_down(const Expr& a, int m);
// Sparse polynomial in p: {degree, coefficient} pairs.
Expr poly_p(std::initializer_list<std::pair<int, long>> terms);

// Named-binding environment with per-(name, truncation) memoization and
// cycle detection. Definitions are immutable once added; the memo is guarded
// so concurrent evaluations of different entries are safe.
class EvalEnv {
public:
    void define(const std::string& name, Expr e);
    bool has(const std::string& name) const;
    const Expr& lookup(const std::string& name) const;

    PowerSeries eval_p(const Expr& e, int order) const;
    PowerSeries eval_p(const std::string& name, int order) const;
    BiSeries eval_pu(const Expr& e, int order, int udeg) const;
    BiSeries eval_pu(const std::string& name, int order, int udeg) const;
    // Evaluate with u bound to the series of `u_binding`; a division whose
    // denominator loses its unit constant term under the binding reports
    // "division blow-up".
    PowerSeries eval_subst_u(const Expr& e, const Expr& u_binding, int order) const;

private:
    struct Ctx;
    PowerSeries eval_p_node(const Expr& e, int order, Ctx& ctx) const;
    BiSeries eval_pu_node(const Expr& e, int order, int udeg, Ctx& ctx) const;

    std::map<std::string, Expr> defs_;
    // Owned indirectly so the environment stays movable.
    mutable std::unique_ptr<std::mutex> memo_mutex_ = std::make_unique<std::mutex>();
    mutable std::map<std::pair<std::string, int>, PowerSeries> memo_p_;
    mutable std::map<std::tuple<std::string, int, int>, BiSeries> memo_pu_;
};

// Convenience wrappers matching the operation vocabulary used elsewhere.
PowerSeries expr_eval(const Expr& e, int order, const EvalEnv& env);
BiSeries expr_eval(const Expr& e, int order, int udeg, const EvalEnv& env);
PowerSeries ps_subst_u(const Expr& e, const Expr& g, int order, const EvalEnv& env);

}  // namespace polyia
