//! Finite-field toolkit for the permutation-polynomial and girth machinery
//! behind girth-eight monomial graphs: exact F_q arithmetic, power sums of
//! A_k and B_k with closed forms, Hermite and brute-force permutation tests,
//! necessary-condition filters, the alpha(p) function, and BFS girth
//! verification of the graphs G_q(X^{m1}Y^{n1}, X^{m2}Y^{n2}).

pub mod ffield;
pub mod filters;
pub mod modarith;
pub mod monograph;
pub mod permpoly;
pub mod report;
