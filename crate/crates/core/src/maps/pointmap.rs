use std::collections::HashSet;

use crate::error::{Error, Result};

/// A map between labeled finite carriers, given as `(x, f(x))` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    pairs: Vec<(String, String)>,
}

impl PointMap {
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (x, _) in &pairs {
            if !seen.insert(x.as_str()) {
                return Err(Error::DuplicateLabel(x.clone()));
            }
        }
        Ok(PointMap { pairs })
    }

    pub fn identity(labels: &[String]) -> Self {
        PointMap {
            pairs: labels.iter().map(|l| (l.clone(), l.clone())).collect(),
        }
    }

    /// From image indices into `codomain`, one per domain label.
    pub fn from_images(domain: &[String], codomain: &[String], images: &[usize]) -> Self {
        PointMap {
            pairs: domain
                .iter()
                .zip(images)
                .map(|(x, &i)| (x.clone(), codomain[i].clone()))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    /// Image labels in order of first appearance.
    pub fn image_labels(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.pairs
            .iter()
            .filter(|(_, y)| seen.insert(y.as_str()))
            .map(|(_, y)| y.clone())
            .collect()
    }

    /// Image index for every domain label, in domain order.
    pub fn resolve(&self, domain: &[String], codomain: &[String]) -> Result<Vec<usize>> {
        let find = |labels: &[String], l: &str| labels.iter().position(|m| m == l);
        for (x, _) in &self.pairs {
            if find(domain, x).is_none() {
                return Err(Error::PointOutsideCarrier(x.clone()));
            }
        }
        domain
            .iter()
            .map(|x| {
                let (_, y) = self
                    .pairs
                    .iter()
                    .find(|(a, _)| a == x)
                    .ok_or_else(|| Error::NotTotal(format!("no image for {x}")))?;
                find(codomain, y).ok_or_else(|| Error::PointOutsideCarrier(y.clone()))
            })
            .collect()
    }

    /// One `x y` pair per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().filter(|f| *f != "->").collect();
            match fields.as_slice() {
                [x, y] => pairs.push((x.to_string(), y.to_string())),
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("expected two labels, found {}", fields.len()),
                    })
                }
            }
        }
        Self::new(pairs)
    }

    pub fn render(&self) -> String {
        self.pairs.iter().map(|(x, y)| format!("{x} {y}\n")).collect()
    }
}

/// Inverse of a permutation given as image indices, or `None` if `images` is
/// not a bijection onto `0..n`.
pub fn invert(images: &[usize], n: usize) -> Option<Vec<usize>> {
    if images.len() != n {
        return None;
    }
    let mut inverse = vec![usize::MAX; n];
    for (i, &y) in images.iter().enumerate() {
        if y >= n || inverse[y] != usize::MAX {
            return None;
        }
        inverse[y] = i;
    }
    Some(inverse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_resolve() {
        let m = PointMap::parse("# swap\na b\nb -> a\n").unwrap();
        assert_eq!(
            m.resolve(&labels(&["a", "b"]), &labels(&["a", "b"])).unwrap(),
            vec![1, 0]
        );
        assert_eq!(PointMap::parse(&m.render()).unwrap(), m);
        assert_eq!(m.image_labels(), labels(&["b", "a"]));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            PointMap::parse("a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            PointMap::parse("a b\na c\n"),
            Err(Error::DuplicateLabel(_))
        ));
        let m = PointMap::parse("a b\n").unwrap();
        assert!(matches!(
            m.resolve(&labels(&["a", "c"]), &labels(&["b"])),
            Err(Error::NotTotal(_))
        ));
        assert!(matches!(
            m.resolve(&labels(&["a"]), &labels(&["z"])),
            Err(Error::PointOutsideCarrier(_))
        ));
    }

    #[test]
    fn inversion() {
        assert_eq!(invert(&[2, 0, 1], 3), Some(vec![1, 2, 0]));
        assert_eq!(invert(&[0, 0], 2), None);
        assert_eq!(invert(&[0], 2), None);
    }
}
