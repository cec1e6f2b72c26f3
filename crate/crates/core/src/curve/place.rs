use std::fmt;
use std::sync::{Arc, RwLock};

use super::branch::BranchClass;
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::poly::{form_substitute, local_indices, BiPoly, Form, ProjPoint, SeriesOrder, TSeries};

/// A place of the curve: one Frobenius class of branches at a closed point.
pub struct Place {
    pub(crate) label: String,
    pub(crate) index: usize,
    pub(crate) point: ProjPoint,
    pub(crate) singular: bool,
    pub(crate) branch: usize,
    pub(crate) class: BranchClass,
    pub(crate) default_prec: usize,
    cache: RwLock<Option<Arc<PlaceParam>>>,
}

/// Parametrization of a place over its residue field F_{p^deg}.
#[derive(Debug)]
pub struct PlaceParam {
    /// Local coordinates (centered at the point) in the chart of the place.
    pub x: TSeries,
    pub y: TSeries,
    /// (X(t), Y(t), Z(t)) with the chart coordinate equal to 1.
    pub hom: [TSeries; 3],
}

impl PlaceParam {
    pub fn prec(&self) -> usize {
        self.x.prec().min(self.y.prec())
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({} at {}, deg {})", self.label, self.point, self.degree())
    }
}

impl Place {
    pub(crate) fn new(point: ProjPoint, singular: bool, branch: usize, class: BranchClass, default_prec: usize) -> Place {
        Place {
            label: String::new(),
            index: 0,
            point,
            singular,
            branch,
            class,
            default_prec,
            cache: RwLock::new(None),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    /// Position in the canonical place order.
    pub fn index(&self) -> usize {
        self.index
    }
    /// Underlying closed point, coordinates in F_{p^k} with k its degree.
    pub fn point(&self) -> &ProjPoint {
        &self.point
    }
    pub fn point_degree(&self) -> u32 {
        self.point.ctx().k()
    }
    /// Degree of the place over F_p.
    pub fn degree(&self) -> u32 {
        self.class.degree
    }
    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }
    pub fn is_singular(&self) -> bool {
        self.singular
    }
    /// Index of the coordinate set to 1 (0 = X, 1 = Y, 2 = Z).
    pub fn chart(&self) -> usize {
        self.point.chart()
    }
    /// Which place at the same point this is, in branch order.
    pub fn branch_index(&self) -> usize {
        self.branch
    }
    /// Residue field F_{p^deg}.
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.class.field
    }
    /// The curve in local coordinates centered at the point, over the residue field.
    pub fn local_eq(&self) -> &BiPoly {
        &self.class.local_eq
    }
    /// Blow-up multiplicities along the branch, starting at the point.
    pub fn multiplicities(&self) -> &[u32] {
        &self.class.recipe.mults
    }

    /// Parametrization known at least to `prec` coefficients.
    pub fn param(&self, prec: usize) -> Result<Arc<PlaceParam>> {
        if let Some(p) = self.cache.read().unwrap().as_ref() {
            if p.prec() >= prec {
                return Ok(p.clone());
            }
        }
        let want = prec.max(self.default_prec);
        let (bx, by) = self.class.recipe.param(want)?;
        let (x, y) = match &self.class.lift {
            None => (bx, by),
            Some(lift) => {
                let f = &self.class.field;
                let down = |s: &TSeries| -> Result<TSeries> {
                    let mut c = Vec::with_capacity(s.prec());
                    for &v in s.coeffs() {
                        c.push(lift.restrict(v).ok_or_else(|| {
                            Error::Inconsistent(format!("parametrization of {} leaves its residue field", self.label))
                        })?);
                    }
                    Ok(TSeries::new(f, c))
                };
                (down(&bx)?, down(&by)?)
            }
        };
        let f = &self.class.field;
        let chart = self.chart();
        let (i, j) = local_indices(chart);
        let n = x.prec().min(y.prec());
        let mut hom = [TSeries::zero(f, n), TSeries::zero(f, n), TSeries::zero(f, n)];
        hom[chart] = TSeries::constant(f, 1, n);
        hom[i] = x.truncate(n).add_const(self.class.center[i]);
        hom[j] = y.truncate(n).add_const(self.class.center[j]);
        let p = Arc::new(PlaceParam { x, y, hom });
        *self.cache.write().unwrap() = Some(p.clone());
        Ok(p)
    }

    /// H(X(t), Y(t), Z(t)) to `prec` coefficients.
    pub fn form_series(&self, h: &Form, prec: usize) -> Result<TSeries> {
        let par = self.param(prec)?;
        let hom = [par.hom[0].truncate(prec), par.hom[1].truncate(prec), par.hom[2].truncate(prec)];
        Ok(form_substitute(h, &hom)?)
    }

    /// Whether H vanishes at the underlying point.
    pub fn form_vanishes(&self, h: &Form) -> Result<bool> {
        Ok(h.eval(self.point.ctx(), self.point.coords())? == 0)
    }

    /// Certified order of H at this place; `curve_degree` bounds the
    /// intersection so the needed precision is known in advance.
    pub fn order_of(&self, h: &Form, curve_degree: u32) -> Result<usize> {
        if !self.form_vanishes(h)? {
            return Ok(0);
        }
        let cap = (h.degree() * curve_degree) as usize / self.degree() as usize + 1;
        match self.form_series(h, cap)?.order() {
            SeriesOrder::Order(n) => Ok(n),
            SeriesOrder::AtLeast(_) => Err(Error::CurveComponent),
        }
    }
}
