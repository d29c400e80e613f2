use std::fmt;

/// A total map on `0..n`, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    img: Vec<u8>,
}

impl Transformation {
    /// Panics if some image is out of range.
    pub fn new(img: Vec<u8>) -> Self {
        let n = img.len();
        assert!(img.iter().all(|&v| (v as usize) < n), "image out of range");
        Transformation { img }
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            img: (0..n as u8).collect(),
        }
    }

    pub fn constant(n: usize, c: u8) -> Self {
        Transformation { img: vec![c; n] }
    }

    /// The `index`-th map of `0..n` in lexicographic order of image arrays.
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut img = vec![0u8; n];
        for slot in img.iter_mut().rev() {
            *slot = (index % n) as u8;
            index /= n;
        }
        Transformation { img }
    }

    pub fn index(&self) -> usize {
        let n = self.img.len();
        self.img.iter().fold(0, |acc, &v| acc * n + v as usize)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.img
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        Transformation {
            img: self.img.iter().map(|&v| other.img[v as usize]).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    /// Range as a bitmask.
    pub fn range_mask(&self) -> u32 {
        self.img.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn min_of_range(&self) -> usize {
        self.range_mask().trailing_zeros() as usize
    }

    /// Least member of the kernel class of `x`.
    pub fn kernel_min(&self, x: usize) -> usize {
        let v = self.img[x];
        self.img.iter().position(|&w| w == v).unwrap()
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.img.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
