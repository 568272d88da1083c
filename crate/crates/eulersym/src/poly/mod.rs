//! Exact sparse multivariate polynomial arithmetic over the rationals:
//! monomials, monomial orders, polynomials, derivatives, evaluation and
//! linear changes of coordinates.

mod monomial;
mod order;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use polynomial::{rat, rat_int, rat_pow, Polynomial, Rational};
pub use ring::Ring;
