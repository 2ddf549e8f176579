#pragma once

#include <memory>
#include <string>
#include <vector>

namespace subdiff {

/// Closed expression language for coefficients and data in configuration
/// files. Grammar:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?
///   atom   := number | 'x' | 't' | 'pi' | '(' expr ')'
///           | ('exp' | 'cos' | 'sin' | 'sqrt') '(' expr ')'
///           | 'pow' '(' expr ',' expr ')'
///           | 'indicator' '(' number ',' number ')'     -- 1 on (l, r) in x, else 0
///
/// Parse errors throw Error(ErrorKind::Config) with the column.
class Expression {
public:
    static Expression parse(const std::string& text);

    [[nodiscard]] double operator()(double x, double t) const;
    [[nodiscard]] const std::string& text() const noexcept { return text_; }

    [[nodiscard]] bool uses_x() const noexcept { return uses_x_; }
    [[nodiscard]] bool uses_t() const noexcept { return uses_t_; }
    /// Expression is a literal or built from literals only.
    [[nodiscard]] bool is_constant() const noexcept { return !uses_x_ && !uses_t_; }
    /// Endpoints of every indicator(l, r) term; natural quadrature breakpoints.
    [[nodiscard]] const std::vector<double>& indicator_endpoints() const noexcept {
        return endpoints_;
    }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
    bool uses_x_ = false;
    bool uses_t_ = false;
    std::vector<double> endpoints_;
};

}  // namespace subdiff
