//! Random rewrites of representations for the canonical-code properties.

use eqdac::isomorphism::build_tree;
use eqdac::lang::{ArithOp, CmpOp, StrPred};
use eqdac::{SymbolicCondition, SymbolicTerm};
use rand::seq::SliceRandom;
use rand::Rng;

/// Shuffles children of commutative nodes and swaps operands of symmetric
/// atoms and of `+`/`*`, each with probability one half.
pub fn shuffle_commutative<R: Rng>(phi: &SymbolicCondition, rng: &mut R) -> SymbolicCondition {
    use SymbolicCondition as C;
    match phi {
        C::And(cs) | C::Or(cs) => {
            let mut cs: Vec<_> = cs.iter().map(|c| shuffle_commutative(c, rng)).collect();
            if rng.gen_bool(0.5) {
                cs.shuffle(rng);
            }
            if matches!(phi, C::And(_)) {
                C::And(cs)
            } else {
                C::Or(cs)
            }
        }
        C::Not(x) => C::Not(Box::new(shuffle_commutative(x, rng))),
        C::AtomCmp(op, l, r) => {
            let (l, r) = (shuffle_term(l, rng), shuffle_term(r, rng));
            if matches!(op, CmpOp::Eq | CmpOp::Ne) && rng.gen_bool(0.5) {
                C::AtomCmp(*op, r, l)
            } else {
                C::AtomCmp(*op, l, r)
            }
        }
        C::AtomStr(p, l, r) => {
            let (l, r) = (shuffle_term(l, rng), shuffle_term(r, rng));
            if *p == StrPred::Equals && rng.gen_bool(0.5) {
                C::AtomStr(*p, r, l)
            } else {
                C::AtomStr(*p, l, r)
            }
        }
        C::True | C::False => phi.clone(),
    }
}

fn shuffle_term<R: Rng>(t: &SymbolicTerm, rng: &mut R) -> SymbolicTerm {
    match t {
        SymbolicTerm::Compound(op, a, b) => {
            let (a, b) = (shuffle_term(a, rng), shuffle_term(b, rng));
            if matches!(op, ArithOp::Add | ArithOp::Mul) && rng.gen_bool(0.5) {
                SymbolicTerm::compound(*op, b, a)
            } else {
                SymbolicTerm::compound(*op, a, b)
            }
        }
        other => other.clone(),
    }
}

/// Number of order-sensitive sites: ordering comparisons, `-`, `/` and the
/// asymmetric string predicates.
pub fn ordered_sites(phi: &SymbolicCondition) -> usize {
    use SymbolicCondition as C;
    match phi {
        C::And(cs) | C::Or(cs) => cs.iter().map(ordered_sites).sum(),
        C::Not(x) => ordered_sites(x),
        C::AtomCmp(op, l, r) => {
            usize::from(!matches!(op, CmpOp::Eq | CmpOp::Ne)) + term_sites(l) + term_sites(r)
        }
        C::AtomStr(p, l, r) => usize::from(*p != StrPred::Equals) + term_sites(l) + term_sites(r),
        C::True | C::False => 0,
    }
}

fn term_sites(t: &SymbolicTerm) -> usize {
    match t {
        SymbolicTerm::Compound(op, a, b) => {
            usize::from(matches!(op, ArithOp::Sub | ArithOp::Div)) + term_sites(a) + term_sites(b)
        }
        _ => 0,
    }
}

/// Swaps the operands at order-sensitive site `k`. Also reports whether the
/// two operands are canonically identical, in which case the swap is a no-op.
pub fn swap_site(phi: &SymbolicCondition, k: usize) -> (SymbolicCondition, bool) {
    let mut k = k;
    let mut same = false;
    let out = swap_cond(phi, &mut k, &mut same);
    (out, same)
}

fn same_canonical(a: &SymbolicTerm, b: &SymbolicTerm) -> bool {
    let t = build_tree(&SymbolicCondition::cmp(CmpOp::Gt, a.clone(), b.clone()));
    t.children()[0] == t.children()[1]
}

fn swap_cond(phi: &SymbolicCondition, k: &mut usize, same: &mut bool) -> SymbolicCondition {
    use SymbolicCondition as C;
    match phi {
        C::And(cs) => C::And(cs.iter().map(|c| swap_cond(c, k, same)).collect()),
        C::Or(cs) => C::Or(cs.iter().map(|c| swap_cond(c, k, same)).collect()),
        C::Not(x) => C::Not(Box::new(swap_cond(x, k, same))),
        C::AtomCmp(op, l, r) => {
            if !matches!(op, CmpOp::Eq | CmpOp::Ne) {
                if *k == 0 {
                    *k = usize::MAX;
                    *same = same_canonical(l, r);
                    return C::AtomCmp(*op, r.clone(), l.clone());
                }
                *k = k.wrapping_sub(1);
            }
            C::AtomCmp(*op, swap_term(l, k, same), swap_term(r, k, same))
        }
        C::AtomStr(p, l, r) => {
            if *p != StrPred::Equals {
                if *k == 0 {
                    *k = usize::MAX;
                    *same = same_canonical(l, r);
                    return C::AtomStr(*p, r.clone(), l.clone());
                }
                *k = k.wrapping_sub(1);
            }
            C::AtomStr(*p, swap_term(l, k, same), swap_term(r, k, same))
        }
        other => other.clone(),
    }
}

fn swap_term(t: &SymbolicTerm, k: &mut usize, same: &mut bool) -> SymbolicTerm {
    match t {
        SymbolicTerm::Compound(op, a, b) => {
            if matches!(op, ArithOp::Sub | ArithOp::Div) {
                if *k == 0 {
                    *k = usize::MAX;
                    *same = same_canonical(a, b);
                    return SymbolicTerm::compound(*op, (**b).clone(), (**a).clone());
                }
                *k = k.wrapping_sub(1);
            }
            SymbolicTerm::compound(*op, swap_term(a, k, same), swap_term(b, k, same))
        }
        other => other.clone(),
    }
}
