#pragma once

#include <memory>
#include <string>

namespace nano {

/// Arithmetic expression over the simulation clock and numeric literals.
/// Used as the operand language of temporal conditions (`until`,
/// `terminate`).
struct PredExpr {
    enum class Kind { Number, Time, Binary };
    Kind kind = Kind::Number;
    double number = 0.0;
    char op = 0;  // '+', '-', '*', '/'
    std::shared_ptr<PredExpr> lhs;
    std::shared_ptr<PredExpr> rhs;

    static PredExpr make_number(double v);
    static PredExpr make_time();
    static PredExpr make_binary(char op, PredExpr l, PredExpr r);
};

/// A condition evaluated against the clock at event-fire time. Either a
/// constant or a single comparison between two arithmetic expressions.
struct Predicate {
    enum class Kind { Constant, Compare };
    Kind kind = Kind::Constant;
    bool constant = false;
    std::string comparison;  // geq, leq, gt, lt, eq, neq
    PredExpr lhs;
    PredExpr rhs;

    static Predicate never() { return Predicate{}; }
    static Predicate always();
    static Predicate compare(std::string op, PredExpr l, PredExpr r);

    bool operator==(const Predicate& other) const;
};

double eval(const PredExpr& expr, double time);
bool eval(const Predicate& predicate, double time);

/// Renders the predicate as a Nanosyntax expression, e.g.
/// "(time >= 100.0)" or "false". Re-parsing yields an equal predicate.
std::string to_source(const Predicate& predicate);

}  // namespace nano
