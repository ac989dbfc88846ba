//! Case tables for the 2- and 3-bracket of `∂/(2·step)` on monomial chains `f·I`.
//!
//! The tables only inspect which of the input types contain `u`, so they hold in any
//! dimension; they are written out for `n = 3` and used there.

use crate::error::{Error, Result};
use crate::lattice::{pair_sign, position_sign, LatticeElement, Role};
use crate::scalar::{rat, LaurentH};

/// A chain all of whose cells have one type: the coefficient field `f` (as a 0-chain) and `I`.
struct Monomial {
    field: LatticeElement,
    ty: u32,
}

fn split(x: &LatticeElement) -> Result<Option<Monomial>> {
    let mut ty = None;
    for (c, _) in x.entries() {
        match ty {
            None => ty = Some(c.ty),
            Some(t) if t != c.ty => {
                return Err(Error::InvalidArgument("table brackets need monomial chains f·I".into()))
            }
            _ => {}
        }
    }
    Ok(ty.map(|ty| Monomial { field: x.retyped(0, 1), ty }))
}

/// Signed type, `±I`; `None` is the zero type product.
type Signed = Option<(i32, u32)>;

fn times(a: Signed, b: Signed) -> Signed {
    let ((sa, ta), (sb, tb)) = (a?, b?);
    if ta & tb != 0 {
        return None;
    }
    Some((sa * sb * pair_sign(ta, tb), ta | tb))
}

fn interior(a: Signed, u: usize) -> Signed {
    let (s, t) = a?;
    if t >> u & 1 == 0 {
        return None;
    }
    let rest = t & !(1 << u);
    Some((s * position_sign(rest, u), rest))
}

fn plain(t: u32) -> Signed {
    Some((1, t))
}

/// `field · (±T)` as a chain.
fn attach(field: &LatticeElement, t: Signed, zero: &LatticeElement) -> Result<LatticeElement> {
    match t {
        None => Ok(zero.clone()),
        Some((s, ty)) => Ok(field.retyped(ty, s)),
    }
}

struct Ops<'a> {
    u: usize,
    zero: &'a LatticeElement,
}

impl Ops<'_> {
    fn t(&self, f: &LatticeElement) -> Result<LatticeElement> {
        f.translate(self.u, false)
    }
    fn tp(&self, f: &LatticeElement) -> Result<LatticeElement> {
        f.translate(self.u, true)
    }
    fn d(&self, f: &LatticeElement) -> Result<LatticeElement> {
        f.divided_difference(self.u, true)
    }
    fn dp(&self, f: &LatticeElement) -> Result<LatticeElement> {
        f.divided_difference(self.u, false)
    }
}

fn mul(xs: &[&LatticeElement]) -> Result<LatticeElement> {
    let mut acc = xs[0].clone();
    for x in &xs[1..] {
        acc = acc.wedge(x)?;
    }
    Ok(acc)
}

/// Evaluates the printed case table of `[v_1, ..., v_k]_u` for `k ∈ {2, 3}`.
pub fn bracket_table_n3(elements: &[LatticeElement], u: usize) -> Result<LatticeElement> {
    let k = elements.len();
    if k != 2 && k != 3 {
        return Err(Error::InvalidArgument(format!("case tables exist for k = 2, 3, got {k}")));
    }
    let first = &elements[0];
    if first.spec().dim != 3 {
        return Err(Error::InvalidArgument("case tables are stated for n = 3".into()));
    }
    for x in elements {
        first.check_compatible(x)?;
    }
    if first.role() != Role::Chain {
        return Err(Error::RoleMismatch { expected: "chain", found: first.role().name() });
    }
    let zero = LatticeElement::zero(first.spec(), Role::Chain);
    let mut monos = Vec::new();
    for x in elements {
        match split(x)? {
            Some(m) => monos.push(m),
            None => return Ok(zero),
        }
    }
    let ops = Ops { u, zero: &zero };
    if k == 2 {
        two(&ops, &monos[0], &monos[1])
    } else {
        three(&ops, &monos[0], &monos[1], &monos[2], first)
    }
}

fn two(o: &Ops, a: &Monomial, b: &Monomial) -> Result<LatticeElement> {
    let u = o.u;
    let (f, g) = (&a.field, &b.field);
    let (in_i, in_j) = (a.ty >> u & 1 == 1, b.ty >> u & 1 == 1);
    let half = LaurentH::constant(rat(1, 2));
    let (coeff, ty) = match (in_i, in_j) {
        (true, true) => {
            let sym_f = o.d(f)?.plus(&o.dp(f)?)?;
            let sym_g = o.d(g)?.plus(&o.dp(g)?)?;
            let c = sym_f.wedge(g)?.minus(&f.wedge(&sym_g)?)?.scaled(&half);
            (c, times(interior(plain(a.ty), u), plain(b.ty)))
        }
        (true, false) => {
            let c = mul(&[&o.t(f)?, &o.dp(g)?])?.plus(&mul(&[&o.tp(f)?, &o.d(g)?])?)?;
            (c.scaled(&-half), interior(times(plain(a.ty), plain(b.ty)), u))
        }
        (false, true) => {
            let c = mul(&[&o.dp(f)?, &o.t(g)?])?.plus(&mul(&[&o.d(f)?, &o.tp(g)?])?)?;
            (c.scaled(&-half), interior(times(plain(a.ty), plain(b.ty)), u))
        }
        (false, false) => return Ok(o.zero.clone()),
    };
    attach(&coeff, ty, o.zero)
}

fn three(o: &Ops, a: &Monomial, b: &Monomial, c: &Monomial, any: &LatticeElement) -> Result<LatticeElement> {
    let u = o.u;
    let (f, g, k) = (&a.field, &b.field, &c.field);
    let inside = (a.ty >> u & 1 == 1, b.ty >> u & 1 == 1, c.ty >> u & 1 == 1);
    let sign_of = |t: u32| if t.count_ones() % 2 == 0 { 1 } else { -1 };
    let all = interior(times(times(plain(a.ty), plain(b.ty)), plain(c.ty)), u);
    let (coeff, ty) = match inside {
        (true, true, false) => {
            let x = mul(&[f, &o.d(g)?])?.minus(&mul(&[g, &o.d(f)?])?)?.wedge(&o.d(k)?)?;
            let y = mul(&[g, &o.dp(f)?])?.minus(&mul(&[f, &o.dp(g)?])?)?.wedge(&o.dp(k)?)?;
            let t = times(times(plain(a.ty), interior(plain(b.ty), u)), plain(c.ty));
            (x.plus(&y)?.scaled(&LaurentH::from_int(sign_of(a.ty) as i64)), t)
        }
        (true, false, true) => {
            let x = mul(&[f, &o.d(k)?])?.minus(&mul(&[k, &o.d(f)?])?)?.wedge(&o.d(g)?)?;
            let y = mul(&[k, &o.dp(f)?])?.minus(&mul(&[f, &o.dp(k)?])?)?.wedge(&o.dp(g)?)?;
            let t = times(times(plain(a.ty), plain(b.ty)), interior(plain(c.ty), u));
            (x.plus(&y)?.scaled(&LaurentH::from_int((sign_of(a.ty) * sign_of(b.ty)) as i64)), t)
        }
        (false, true, true) => {
            let x = mul(&[k, &o.d(g)?])?.minus(&mul(&[g, &o.d(k)?])?)?.wedge(&o.d(f)?)?;
            let y = mul(&[g, &o.dp(k)?])?.minus(&mul(&[k, &o.dp(g)?])?)?.wedge(&o.dp(f)?)?;
            let t = times(times(plain(a.ty), interior(plain(b.ty), u)), plain(c.ty));
            (x.plus(&y)?.scaled(&LaurentH::from_int(sign_of(a.ty) as i64)), t)
        }
        (true, false, false) => {
            let x = mul(&[&o.t(f)?, &o.dp(g)?, &o.dp(k)?])?.minus(&mul(&[&o.tp(f)?, &o.d(g)?, &o.d(k)?])?)?;
            (x, all)
        }
        (false, true, false) => {
            let x = mul(&[&o.dp(f)?, &o.t(g)?, &o.dp(k)?])?.minus(&mul(&[&o.d(f)?, &o.tp(g)?, &o.d(k)?])?)?;
            (x, all)
        }
        (false, false, true) => {
            let x = mul(&[&o.dp(f)?, &o.dp(g)?, &o.t(k)?])?.minus(&mul(&[&o.d(f)?, &o.d(g)?, &o.tp(k)?])?)?;
            (x, all)
        }
        (true, true, true) | (false, false, false) => return Ok(o.zero.clone()),
    };
    let scale = any.spec().step().scale(&rat(1, 2));
    attach(&coeff.scaled(&scale), ty, o.zero)
}
