//! Shifts, differences, boundary, coboundary, star and interior product.

use super::{Cell, LatticeElement, Role};
use crate::error::{Error, Result};
use crate::scalar::{int, LaurentH};

/// `±_{J,K} = (-1)^#{(j,k) : j ∈ J, k ∈ K, j > k}` for bitmasks, so that `J·K = ±_{J,K} (J ∪ K)`.
pub fn pair_sign(j: u32, k: u32) -> i32 {
    let mut count = 0;
    let mut rest = k;
    while rest != 0 {
        let b = rest.trailing_zeros();
        count += (j >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `±^u_I = (-1)^#{i ∈ I : i < u}`.
pub fn position_sign(ty: u32, u: usize) -> i32 {
    if (ty & ((1u32 << u) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl LatticeElement {
    fn check_axis(&self, u: usize) -> Result<()> {
        if u >= self.spec().dim {
            return Err(Error::InvalidArgument(format!("axis {u} out of range for dimension {}", self.spec().dim)));
        }
        Ok(())
    }

    fn require_role(&self, role: Role) -> Result<()> {
        if self.role() != role {
            return Err(Error::RoleMismatch { expected: role.name(), found: self.role().name() });
        }
        Ok(())
    }

    /// `T_u` (values move forward, `(T_u f)(p) = f(p - e_u)`) or, with `forward`,
    /// `T'_u` (`(T'_u f)(p) = f(p + e_u)`).
    pub fn translate(&self, u: usize, forward: bool) -> Result<LatticeElement> {
        self.check_axis(u)?;
        let s = self.spec().spacing;
        let by = if forward { -s } else { s };
        let domain = self.domain().map(|d| d.shifted(u, by));
        let mut out = self.empty_like().with_domain_unchecked(domain);
        for (c, v) in self.entries() {
            let mut cell = c.clone();
            cell.center[u] += by;
            out.add_entry(cell, v.clone());
        }
        Ok(out)
    }

    /// `Δ_u = (T'_u - id)/step` with `forward`, otherwise `Δ'_u = (id - T_u)/step`.
    pub fn divided_difference(&self, u: usize, forward: bool) -> Result<LatticeElement> {
        let diff = if forward {
            self.translate(u, true)?.minus(self)?
        } else {
            self.minus(&self.translate(u, false)?)?
        };
        Ok(diff.scaled(&self.spec().inverse_step(1)))
    }

    /// `id̄`: multiplies degree-`k` parts by `(-1)^k`.
    pub fn sign_twist(&self) -> LatticeElement {
        let mut out = self.empty_like();
        for (c, v) in self.entries() {
            let sign = if c.degree() % 2 == 0 { 1 } else { -1 };
            out.add_entry(c.clone(), v.scale(&int(sign)));
        }
        out
    }

    /// `(*f)_I = ±_{I^c, I} f_{I^c}`
    pub fn star(&self) -> LatticeElement {
        let full = (1u32 << self.spec().dim) - 1;
        let mut out = self.empty_like();
        for (c, v) in self.entries() {
            let comp = full & !c.ty;
            out.add_entry(Cell { center: c.center.clone(), ty: comp }, v.scale(&int(pair_sign(c.ty, comp) as i64)));
        }
        out
    }

    /// `f -> f_{uI}`: drops `u` from every type containing it, with the sign of moving `u` to
    /// the front. This is the interior product `i_u`.
    pub fn interior(&self, u: usize) -> Result<LatticeElement> {
        self.check_axis(u)?;
        let mut out = self.empty_like();
        for (c, v) in self.entries() {
            if c.ty >> u & 1 == 0 {
                continue;
            }
            let ty = c.ty & !(1 << u);
            out.add_entry(Cell { center: c.center.clone(), ty }, v.scale(&int(position_sign(ty, u) as i64)));
        }
        Ok(out)
    }

    /// `du ∧ f` pointwise, i.e. adding `u` in front of every type not containing it.
    pub fn front_wedge(&self, u: usize) -> Result<LatticeElement> {
        self.check_axis(u)?;
        let mut out = self.empty_like();
        for (c, v) in self.entries() {
            if c.ty >> u & 1 == 1 {
                continue;
            }
            out.add_entry(
                Cell { center: c.center.clone(), ty: c.ty | 1 << u },
                v.scale(&int(position_sign(c.ty, u) as i64)),
            );
        }
        Ok(out)
    }

    /// `(d_u f)_I = (T_u - T'_u) f_{uI}` regardless of role.
    pub fn boundary_dir_any(&self, u: usize) -> Result<LatticeElement> {
        let g = self.interior(u)?;
        g.translate(u, false)?.minus(&g.translate(u, true)?)
    }

    /// `(δ_u f)_I = ±^u_I (T'_u - T_u) f_{I∖u}` regardless of role.
    pub fn coboundary_dir_any(&self, u: usize) -> Result<LatticeElement> {
        let g = self.front_wedge(u)?;
        g.translate(u, true)?.minus(&g.translate(u, false)?)
    }

    pub fn boundary_dir(&self, u: usize) -> Result<LatticeElement> {
        self.require_role(Role::Chain)?;
        self.boundary_dir_any(u)
    }

    pub fn coboundary_dir(&self, u: usize) -> Result<LatticeElement> {
        self.require_role(Role::Cochain)?;
        self.coboundary_dir_any(u)
    }

    pub fn boundary(&self) -> Result<LatticeElement> {
        self.require_role(Role::Chain)?;
        self.sum_over_axes(|x, u| x.boundary_dir_any(u))
    }

    pub fn coboundary(&self) -> Result<LatticeElement> {
        self.require_role(Role::Cochain)?;
        self.sum_over_axes(|x, u| x.coboundary_dir_any(u))
    }

    /// The differential matching the role.
    pub fn differential(&self) -> Result<LatticeElement> {
        match self.role() {
            Role::Chain => self.boundary(),
            Role::Cochain => self.coboundary(),
        }
    }

    pub fn differential_dir(&self, u: usize) -> Result<LatticeElement> {
        match self.role() {
            Role::Chain => self.boundary_dir_any(u),
            Role::Cochain => self.coboundary_dir_any(u),
        }
    }

    fn sum_over_axes<F>(&self, f: F) -> Result<LatticeElement>
    where
        F: Fn(&LatticeElement, usize) -> Result<LatticeElement>,
    {
        let mut acc = f(self, 0)?;
        for u in 1..self.spec().dim {
            acc = acc.plus(&f(self, u)?)?;
        }
        Ok(acc)
    }

    /// Multiplies by a scalar given as an integer times a power of `h`.
    pub fn scaled_by(&self, c: i64, h_exp: i32) -> LatticeElement {
        self.scaled(&self.spec().h_power(h_exp).scale(&int(c)))
    }

    /// Scalar multiple by a Laurent polynomial evaluated on this lattice's scale.
    pub fn scaled_h(&self, c: &LaurentH) -> LatticeElement {
        match self.spec().scale {
            super::Scale::Formal => self.scaled(c),
            super::Scale::Numeric(level) => self.scaled(&c.evaluate_at_scale(level).into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{type_mask, LatticeSpec};

    #[test]
    fn signs() {
        // {1}·{0} = -{0,1}
        assert_eq!(pair_sign(0b10, 0b01), -1);
        assert_eq!(pair_sign(0b01, 0b10), 1);
        assert_eq!(position_sign(0b011, 2), 1);
        assert_eq!(position_sign(0b001, 2), -1);
        assert_eq!(position_sign(0b100, 0), 1);
    }

    #[test]
    fn one_dimensional_examples() {
        let spec = LatticeSpec::periodic(1, 2).unwrap();
        let x = LatticeElement::basis(&spec, Role::Chain, &[3], 1).unwrap();
        let expected = LatticeElement::from_entries(
            &spec,
            Role::Chain,
            [(Cell::new(&[4], 0), LaurentH::one()), (Cell::new(&[2], 0), LaurentH::from_int(-1))],
        )
        .unwrap();
        assert_eq!(x.boundary().unwrap(), expected);

        // δ f = (f(x+h) - f(x-h)) dx for f the indicator of the point 5
        let f = LatticeElement::basis(&spec, Role::Cochain, &[5], 0).unwrap();
        let expected = LatticeElement::from_entries(
            &spec,
            Role::Cochain,
            [(Cell::new(&[4], 1), LaurentH::one()), (Cell::new(&[6], 1), LaurentH::from_int(-1))],
        )
        .unwrap();
        assert_eq!(f.coboundary().unwrap(), expected);
    }

    #[test]
    fn periodic_wrap() {
        let spec = LatticeSpec::periodic(1, 1).unwrap();
        let x = LatticeElement::basis(&spec, Role::Cochain, &[3], 0).unwrap();
        let shifted = x.translate(0, false).unwrap();
        assert_eq!(shifted.get(&Cell::new(&[0], 0)), LaurentH::one());
    }

    #[test]
    fn interior_sign() {
        let spec = LatticeSpec::periodic(2, 1).unwrap();
        let x = LatticeElement::basis(&spec, Role::Chain, &[0, 0], type_mask(&[0, 1])).unwrap();
        let got = x.interior(0).unwrap();
        assert_eq!(got.get(&Cell::new(&[0, 0], type_mask(&[1]))), LaurentH::one());
        let got = x.interior(1).unwrap();
        assert_eq!(got.get(&Cell::new(&[0, 0], type_mask(&[0]))), LaurentH::from_int(-1));
    }
}
