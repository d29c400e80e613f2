use std::fmt;

/// A partial map on `0..n`, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialTransformation {
    img: Vec<Option<u8>>,
}

impl PartialTransformation {
    pub fn new(img: Vec<Option<u8>>) -> Self {
        let n = img.len();
        assert!(
            img.iter().flatten().all(|&v| (v as usize) < n),
            "image out of range"
        );
        PartialTransformation { img }
    }

    pub fn identity(n: usize) -> Self {
        PartialTransformation {
            img: (0..n as u8).map(Some).collect(),
        }
    }

    pub fn empty(n: usize) -> Self {
        PartialTransformation { img: vec![None; n] }
    }

    /// The identity restricted to the points in `mask`.
    pub fn restricted_identity(n: usize, mask: u32) -> Self {
        PartialTransformation {
            img: (0..n as u8)
                .map(|x| (mask >> x & 1 == 1).then_some(x))
                .collect(),
        }
    }

    /// Digit `0` is undefined and digit `v + 1` maps to `v`, most significant first.
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut img = vec![None; n];
        for slot in img.iter_mut().rev() {
            let d = index % (n + 1);
            index /= n + 1;
            *slot = d.checked_sub(1).map(|v| v as u8);
        }
        PartialTransformation { img }
    }

    pub fn index(&self) -> usize {
        let b = self.img.len() + 1;
        self.img
            .iter()
            .fold(0, |acc, v| acc * b + v.map_or(0, |v| v as usize + 1))
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[Option<u8>] {
        &self.img
    }

    pub fn then(&self, other: &PartialTransformation) -> PartialTransformation {
        PartialTransformation {
            img: self
                .img
                .iter()
                .map(|v| v.and_then(|v| other.img[v as usize]))
                .collect(),
        }
    }

    pub fn domain_mask(&self) -> u32 {
        self.img
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some())
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    /// `D(s)`: the identity on the domain of `s`.
    pub fn domain(&self) -> PartialTransformation {
        Self::restricted_identity(self.img.len(), self.domain_mask())
    }
}

impl fmt::Display for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.img.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match v {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}
