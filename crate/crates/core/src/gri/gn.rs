//! `g_n(x, y_1, …, y_n) = Σ_{δ ∈ S_{n+1}} sign(δ) x^{δ(0)} y_1 x^{δ(1)} ⋯ y_n x^{δ(n)}`.

use num_bigint::BigInt;
use num_traits::One;

use super::expr::Expr;
use super::{GriError, GriResult};
use crate::rings::{Rational, RingContext, RingElement};

/// Largest `n` for which the explicit `(n+1)!`-term AST is built.
pub const MAX_AST_N: usize = 7;
/// Largest `n` for the direct permutation sum.
pub const MAX_NAIVE_N: usize = 7;
/// Largest `n` for the subset DP (`2^(n+1)` memo entries).
pub const MAX_DP_N: usize = 24;

fn check_n(what: &'static str, n: usize, max: usize) -> GriResult<()> {
    if n == 0 || n > max {
        return Err(GriError::SizeLimit { what, n, max });
    }
    Ok(())
}

/// Name of the `k`-th `y` variable (1-based) in [`build_gn`].
pub fn gn_variable(k: usize) -> String {
    format!("y{k}")
}

/// Explicit `g_n` over variables `x, y1, …, yn`. Odd permutations are wrapped in
/// [`Expr::Neg`] and `x^0` factors are omitted.
pub fn build_gn(n: usize) -> GriResult<Expr> {
    check_n("build_gn", n, MAX_AST_N)?;
    let mut terms = Vec::new();
    let mut perm: Vec<usize> = (0..=n).collect();
    permutations(&mut perm, 0, false, &mut |p, odd| {
        let mut factors = Vec::with_capacity(2 * n + 1);
        for (pos, &e) in p.iter().enumerate() {
            if pos > 0 {
                factors.push(Expr::var(&gn_variable(pos)));
            }
            match e {
                0 => {}
                1 => factors.push(Expr::var("x")),
                e => factors.push(Expr::var("x").pow(e as i64)),
            }
        }
        let term = Expr::product(factors);
        terms.push(if odd { term.neg() } else { term });
    });
    Ok(Expr::Sum(terms))
}

/// Visit the permutations of `p[k..]` in lexicographic order of `p` (given sorted
/// input), passing whether the full arrangement is odd.
fn permutations(p: &mut [usize], k: usize, odd: bool, f: &mut impl FnMut(&[usize], bool)) {
    if k == p.len() {
        f(p, odd);
        return;
    }
    for i in k..p.len() {
        // rotating p[k..=i] right moves p[i] to the front: i - k transpositions
        p[k..=i].rotate_right(1);
        permutations(p, k + 1, odd ^ ((i - k) % 2 == 1), f);
        p[k..=i].rotate_left(1);
    }
}

fn check_inputs<E: RingElement>(a: &E, ys: &[E]) -> GriResult<()> {
    for y in ys {
        a.ring().check_same(y.ring())?;
    }
    Ok(())
}

/// Integral representatives `(L·a, L_i·y_i)` and the factor undoing the scaling.
/// Every term of `g_n` has degree `n(n+1)/2` in `a` and 1 in each `y_i`, so
/// `g_n(a, ȳ) = g_n(L·a, L_i·y_i) / (L^{n(n+1)/2} Π L_i)`; integral coordinates avoid
/// gcd work on ever-growing denominators.
fn integral_form<E: RingElement>(a: &E, ys: &[E]) -> (E, Vec<E>, Option<Rational>) {
    let n = ys.len() as u32;
    let la = a.denominator_lcm();
    let mut total = num_traits::pow(la.clone(), (n * (n + 1) / 2) as usize);
    let a = a.scale(&Rational::from(la));
    let ys = ys
        .iter()
        .map(|y| {
            let l = y.denominator_lcm();
            total *= &l;
            y.scale(&Rational::from(l))
        })
        .collect();
    let undo = (!total.is_one()).then(|| Rational::new(BigInt::one(), total).expect("nonzero"));
    (a, ys, undo)
}

fn undo_scaling<E: RingElement>(g: E, undo: Option<Rational>) -> E {
    match undo {
        Some(q) => g.scale(&q),
        None => g,
    }
}

/// `a^0, …, a^n`.
fn powers<E: RingElement>(a: &E, n: usize) -> GriResult<Vec<E>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(a.pow(0)?);
    for p in 1..=n {
        let next = if p == 1 {
            a.clone()
        } else {
            out[p - 1].mul(a)?
        };
        out.push(next);
    }
    Ok(out)
}

/// Direct `(n+1)!`-term summation, with prefix products shared along the recursion.
pub fn eval_gn_naive<E: RingElement>(a: &E, ys: &[E]) -> GriResult<E> {
    let n = ys.len();
    check_n("eval_gn_naive", n, MAX_NAIVE_N)?;
    check_inputs(a, ys)?;
    let (a, ys, undo) = integral_form(a, ys);
    let pw = powers(&a, n)?;
    let mut acc: Option<E> = None;
    naive_rec(&pw, &ys, 0, (1u32 << (n + 1)) - 1, None, false, &mut acc)?;
    Ok(undo_scaling(acc.expect("at least two permutations"), undo))
}

fn naive_rec<E: RingElement>(
    pw: &[E],
    ys: &[E],
    pos: usize,
    remaining: u32,
    prefix: Option<&E>,
    odd: bool,
    acc: &mut Option<E>,
) -> GriResult<()> {
    if remaining == 0 {
        let term = prefix.expect("nonempty word");
        let signed = if odd { term.neg() } else { term.clone() };
        *acc = Some(match acc.take() {
            None => signed,
            Some(s) => s.add(&signed)?,
        });
        return Ok(());
    }
    let mut smaller_remaining = 0u32;
    for p in 0..pw.len() {
        if remaining & (1 << p) == 0 {
            continue;
        }
        // remaining elements smaller than p will be placed later: each is an inversion
        let word = match prefix {
            None => pw[p].clone(),
            Some(pre) => pre.mul(&ys[pos - 1])?.mul(&pw[p])?,
        };
        let flip = smaller_remaining % 2 == 1;
        naive_rec(
            pw,
            ys,
            pos + 1,
            remaining & !(1 << p),
            Some(&word),
            odd ^ flip,
            acc,
        )?;
        smaller_remaining += 1;
    }
    Ok(())
}

/// Subset DP: `G(S) = Σ_{p∈S} (−1)^{|{q∈S: q<p}|} P_p · y_{n+2−|S|} · G(S∖{p})`,
/// with `G({p}) = P_p`, and `g_n = G({0,…,n})`.
pub fn eval_gn_dp<E: RingElement>(a: &E, ys: &[E]) -> GriResult<E> {
    let n = ys.len();
    check_n("eval_gn_dp", n, MAX_DP_N)?;
    check_inputs(a, ys)?;
    let (a, ys, undo) = integral_form(a, ys);
    let pw = powers(&a, n)?;
    let full: usize = (1 << (n + 1)) - 1;
    // h[T] = y_{n+1−|T|} · G(T) for every proper nonempty T
    let mut h: Vec<Option<E>> = vec![None; full];
    for mask in 1..=full {
        let size = mask.count_ones() as usize;
        let g = if size == 1 {
            pw[mask.trailing_zeros() as usize].clone()
        } else {
            let mut acc: Option<E> = None;
            let mut below = 0usize;
            let mut bits = mask;
            while bits != 0 {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rest = h[mask & !(1 << p)].as_ref().expect("subsets come first");
                let term = pw[p].mul(rest)?;
                let term = if below % 2 == 1 { term.neg() } else { term };
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.add(&term)?,
                });
                below += 1;
            }
            acc.expect("nonempty subset")
        };
        if mask == full {
            return Ok(undo_scaling(g, undo));
        }
        h[mask] = Some(ys[n - size].mul(&g)?);
    }
    unreachable!("the full set is the last mask")
}
