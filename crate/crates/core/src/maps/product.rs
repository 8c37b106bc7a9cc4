use crate::error::{Error, Result};
use crate::metrics::{FiniteSpace, GQuasiMetric, TableSpace};
use crate::numerics::Scalar;

/// `d((x1, y1), (x2, y2)) = max{d_X(x1, x2), d_Y(y1, y2)}` on `X × Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductSpace<A, B> {
    left: A,
    right: B,
}

impl<A, B> ProductSpace<A, B> {
    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }
}

impl<A, B> ProductSpace<A, B> {
    /// Both factors must share one index.
    pub fn new<S: Scalar>(left: A, right: B) -> Result<Self>
    where
        A: GQuasiMetric<S>,
        B: GQuasiMetric<S>,
    {
        let (a, b) = (left.index(), right.index());
        if a != b {
            return Err(Error::IndexMismatch(a.render(), b.render()));
        }
        Ok(ProductSpace { left, right })
    }
}

impl<S: Scalar, A: GQuasiMetric<S>, B: GQuasiMetric<S>> GQuasiMetric<S> for ProductSpace<A, B> {
    type Point = (A::Point, B::Point);

    fn index(&self) -> S {
        self.left.index()
    }

    fn contains(&self, p: &Self::Point) -> bool {
        self.left.contains(&p.0) && self.right.contains(&p.1)
    }

    fn dist(&self, x: &Self::Point, y: &Self::Point) -> S {
        S::max_of(&self.left.dist(&x.0, &y.0), &self.right.dist(&x.1, &y.1))
    }

    fn render_point(&self, p: &Self::Point) -> String {
        format!(
            "({},{})",
            self.left.render_point(&p.0),
            self.right.render_point(&p.1)
        )
    }
}

impl<S: Scalar, A: FiniteSpace<S>, B: FiniteSpace<S>> FiniteSpace<S> for ProductSpace<A, B> {
    fn points(&self) -> Vec<Self::Point> {
        let right = self.right.points();
        self.left
            .points()
            .into_iter()
            .flat_map(|a| right.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    fn len(&self) -> usize {
        self.left.len() * self.right.len()
    }
}

/// Materializes a finite product as a table labeled `(a,b)`.
pub fn product_table<S: Scalar>(x: &TableSpace<S>, y: &TableSpace<S>) -> Result<TableSpace<S>> {
    let prod = ProductSpace::new(x.clone(), y.clone())?;
    let pts = prod.points();
    let labels = pts.iter().map(|p| prod.render_point(p)).collect();
    let rows = pts
        .iter()
        .map(|p| pts.iter().map(|q| prod.dist(p, q)).collect())
        .collect();
    TableSpace::new(labels, rows)
}
