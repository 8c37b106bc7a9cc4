use super::invert;
use crate::error::{Error, Result};
use crate::metrics::{FiniteSpace, GQuasiMetric, TableSpace};
use crate::numerics::Scalar;
use crate::topology::{induced_gt, GenTopology};

#[derive(Clone, Debug, PartialEq)]
pub struct Pullback<S> {
    /// `d'(y1, y2) = d(f⁻¹ y1, f⁻¹ y2)` on the codomain labels.
    pub metric: TableSpace<S>,
    /// `{f(U) : U open in the domain}`.
    pub image_family: GenTopology,
    /// Generalized topology induced by `d'`.
    pub induced: GenTopology,
}

impl<S: Scalar> Pullback<S> {
    pub fn families_equal(&self) -> bool {
        self.image_family == self.induced
    }
}

/// Transports a finite g-quasi metric along a bijection onto `codomain`;
/// `images[i]` indexes the image of domain point `i`.
pub fn pullback_metric<S: Scalar>(
    domain: &TableSpace<S>,
    codomain: Vec<String>,
    images: &[usize],
) -> Result<Pullback<S>> {
    let inverse = invert(images, codomain.len()).ok_or_else(|| {
        Error::NotBijective(format!("{} points onto {} labels", images.len(), codomain.len()))
    })?;
    if images.len() != domain.len() {
        return Err(Error::NotBijective(format!(
            "{} images for {} points",
            images.len(),
            domain.len()
        )));
    }
    let rows = inverse
        .iter()
        .map(|&a| inverse.iter().map(|&b| domain.dist(&a, &b)).collect())
        .collect();
    let metric = TableSpace::new(codomain.clone(), rows)?;
    let image_family = induced_gt(domain)?.image(codomain, images)?;
    let induced = induced_gt(&metric)?;
    Ok(Pullback {
        metric,
        image_family,
        induced,
    })
}
