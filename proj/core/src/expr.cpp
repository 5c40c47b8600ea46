#include "polyia/expr.hpp"

#include <stdexcept>

namespace polyia {

namespace {

Expr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

}  // namespace

Expr pvar() { return node({.kind = ExprKind::P}); }
Expr uvar() { return node({.kind = ExprKind::U}); }
Expr lit(const Rat& v) { return node({.kind = ExprKind::Const, .value = v}); }
Expr lit(long v) { return lit(Rat(v)); }
Expr named(const std::string& name) { return node({.kind = ExprKind::Named, .name = name}); }

Expr operator+(const Expr& a, const Expr& b) { return node({.kind = ExprKind::Add, .a = a, .b = b}); }
Expr operator-(const Expr& a, const Expr& b) { return node({.kind = ExprKind::Sub, .a = a, .b = b}); }
Expr operator*(const Expr& a, const Expr& b) { return node({.kind = ExprKind::Mul, .a = a, .b = b}); }
Expr operator/(const Expr& a, const Expr& b) { return node({.kind = ExprKind::Div, .a = a, .b = b}); }
Expr neg(const Expr& a) { return node({.kind = ExprKind::Neg, .a = a}); }
Expr sqrt(const Expr& a) { return node({.kind = ExprKind::Sqrt, .a = a}); }

Expr pow(const Expr& a, int k) {
    if (k < 0) throw std::invalid_argument("negative exponent");
    return node({.kind = ExprKind::Pow, .arg = k, .a = a});
}

Expr shift_down(const Expr& a, int m) {
    if (m <= 0) throw std::invalid_argument("shift must be positive");
    return node({.kind = ExprKind::ShiftDown, .arg = m, .a = a});
}

Expr poly_p(std::initializer_list<std::pair<int, long>> terms) {
    Expr acc;
    for (const auto& [deg, coef] : terms) {
        if (coef == 0) continue;
        Expr term = deg == 0 ? lit(coef)
                             : (coef == 1 ? pow(pvar(), deg) : lit(coef) * pow(pvar(), deg));
        acc = acc ? acc + term : term;
    }
    return acc ? acc : lit(0L);
}

struct EvalEnv::Ctx {
    const Expr* u_binding = nullptr;  // non-null: substitution mode (no memo)
    std::set<std::string> active;     // named defs on the current path
};

void EvalEnv::define(const std::string& name, Expr e) {
    if (!e) throw std::invalid_argument("null expression");
    if (!defs_.emplace(name, std::move(e)).second)
        throw std::invalid_argument("duplicate definition: " + name);
}

bool EvalEnv::has(const std::string& name) const { return defs_.count(name) > 0; }

const Expr& EvalEnv::lookup(const std::string& name) const {
    auto it = defs_.find(name);
    if (it == defs_.end()) throw std::invalid_argument("unknown binding: " + name);
    return it->second;
}

PowerSeries EvalEnv::eval_p_node(const Expr& e, int order, Ctx& ctx) const {
    switch (e->kind) {
        case ExprKind::P:
            return PowerSeries::monomial(order, 1);
        case ExprKind::U:
            if (!ctx.u_binding) throw std::domain_error("u outside bivariate context");
            return eval_p_node(*ctx.u_binding, order, ctx);
        case ExprKind::Const:
            return PowerSeries::constant(order, e->value);
        case ExprKind::Named: {
            if (ctx.active.count(e->name))
                throw std::logic_error("cyclic binding: " + e->name);
            if (!ctx.u_binding) {
                std::lock_guard<std::mutex> lock(*memo_mutex_);
                auto it = memo_p_.find({e->name, order});
                if (it != memo_p_.end()) return it->second;
            }
            ctx.active.insert(e->name);
            PowerSeries v = eval_p_node(lookup(e->name), order, ctx);
            ctx.active.erase(e->name);
            if (!ctx.u_binding) {
                std::lock_guard<std::mutex> lock(*memo_mutex_);
                memo_p_.emplace(std::make_pair(e->name, order), v);
            }
            return v;
        }
        case ExprKind::Add:
            return ps_add(eval_p_node(e->a, order, ctx), eval_p_node(e->b, order, ctx));
        case ExprKind::Sub:
            return ps_sub(eval_p_node(e->a, order, ctx), eval_p_node(e->b, order, ctx));
        case ExprKind::Neg:
            return ps_neg(eval_p_node(e->a, order, ctx));
        case ExprKind::Mul:
            return ps_mul(eval_p_node(e->a, order, ctx), eval_p_node(e->b, order, ctx));
        case ExprKind::Div: {
            PowerSeries num = eval_p_node(e->a, order, ctx);
            PowerSeries den = eval_p_node(e->b, order, ctx);
            if (den.at(0) == 0)
                throw std::domain_error(ctx.u_binding ? "division blow-up" : "non-unit divisor");
            return ps_div(num, den);
        }
        case ExprKind::Sqrt:
            return ps_sqrt(eval_p_node(e->a, order, ctx));
        case ExprKind::Pow: {
            PowerSeries base = eval_p_node(e->a, order, ctx);
            PowerSeries acc = PowerSeries::constant(order, Rat(1));
            for (int i = 0; i < e->arg; ++i) acc = ps_mul(acc, base);
            return acc;
        }
        case ExprKind::ShiftDown:
            return ps_shift_down(eval_p_node(e->a, order + e->arg, ctx), e->arg);
    }
    throw std::logic_error("unreachable expression kind");
}

BiSeries EvalEnv::eval_pu_node(const Expr& e, int order, int udeg, Ctx& ctx) const {
    switch (e->kind) {
        case ExprKind::P:
            return bi_embed(PowerSeries::monomial(order, 1), udeg);
        case ExprKind::U: {
            BiSeries out(order, udeg);
            if (udeg >= 1) out.row(1) = PowerSeries::constant(order, Rat(1));
            return out;
        }
        case ExprKind::Const:
            return bi_embed(PowerSeries::constant(order, e->value), udeg);
        case ExprKind::Named: {
            if (ctx.active.count(e->name))
                throw std::logic_error("cyclic binding: " + e->name);
            {
                std::lock_guard<std::mutex> lock(*memo_mutex_);
                auto it = memo_pu_.find({e->name, order, udeg});
                if (it != memo_pu_.end()) return it->second;
            }
            ctx.active.insert(e->name);
            BiSeries v = eval_pu_node(lookup(e->name), order, udeg, ctx);
            ctx.active.erase(e->name);
            {
                std::lock_guard<std::mutex> lock(*memo_mutex_);
                memo_pu_.emplace(std::make_tuple(e->name, order, udeg), v);
            }
            return v;
        }
        case ExprKind::Add:
            return bi_add(eval_pu_node(e->a, order, udeg, ctx), eval_pu_node(e->b, order, udeg, ctx));
        case ExprKind::Sub:
            return bi_sub(eval_pu_node(e->a, order, udeg, ctx), eval_pu_node(e->b, order, udeg, ctx));
        case ExprKind::Neg:
            return bi_neg(eval_pu_node(e->a, order, udeg, ctx));
        case ExprKind::Mul:
            return bi_mul(eval_pu_node(e->a, order, udeg, ctx), eval_pu_node(e->b, order, udeg, ctx));
        case ExprKind::Div:
            return bi_div(eval_pu_node(e->a, order, udeg, ctx), eval_pu_node(e->b, order, udeg, ctx));
        case ExprKind::Sqrt: {
            BiSeries arg = eval_pu_node(e->a, order, udeg, ctx);
            for (int j = 1; j <= arg.udeg(); ++j)
                if (!arg.row(j).is_zero()) throw std::domain_error("sqrt of u-dependent series");
            return bi_embed(ps_sqrt(arg.row(0)), udeg);
        }
        case ExprKind::Pow: {
            BiSeries base = eval_pu_node(e->a, order, udeg, ctx);
            BiSeries acc = bi_embed(PowerSeries::constant(order, Rat(1)), udeg);
            for (int i = 0; i < e->arg; ++i) acc = bi_mul(acc, base);
            return acc;
        }
        case ExprKind::ShiftDown: {
            BiSeries arg = eval_pu_node(e->a, order + e->arg, udeg, ctx);
            BiSeries out(order, udeg);
            for (int j = 0; j <= udeg; ++j) out.row(j) = ps_shift_down(arg.row(j), e->arg);
            return out;
        }
    }
    throw std::logic_error("unreachable expression kind");
}

PowerSeries EvalEnv::eval_p(const Expr& e, int order) const {
    Ctx ctx;
    return eval_p_node(e, order, ctx);
}

PowerSeries EvalEnv::eval_p(const std::string& name, int order) const {
    return eval_p(named(name), order);
}

BiSeries EvalEnv::eval_pu(const Expr& e, int order, int udeg) const {
    Ctx ctx;
    return eval_pu_node(e, order, udeg, ctx);
}

BiSeries EvalEnv::eval_pu(const std::string& name, int order, int udeg) const {
    return eval_pu(named(name), order, udeg);
}

PowerSeries EvalEnv::eval_subst_u(const Expr& e, const Expr& u_binding, int order) const {
    Ctx ctx;
    ctx.u_binding = &u_binding;
    return eval_p_node(e, order, ctx);
}

PowerSeries expr_eval(const Expr& e, int order, const EvalEnv& env) {
    return env.eval_p(e, order);
}

BiSeries expr_eval(const Expr& e, int order, int udeg, const EvalEnv& env) {
    return env.eval_pu(e, order, udeg);
}

PowerSeries ps_subst_u(const Expr& e, const Expr& g, int order, const EvalEnv& env) {
    return env.eval_subst_u(e, g, order);
}

}  // namespace polyia
