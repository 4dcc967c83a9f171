#![allow(dead_code)]

use fencekit_core::{DimensionVector, FenceQuiver};

/// A named fence quiver with a dimension vector.
pub struct Case {
    pub name: &'static str,
    pub quiver: FenceQuiver,
    pub dims: DimensionVector,
}

impl Case {
    fn new(name: &'static str, heads: &[&str], tails: &[&str], arrows: &[(&str, &str)], dims: &[usize]) -> Case {
        let quiver = FenceQuiver::from_ids(heads, tails, arrows).unwrap();
        let dims = DimensionVector::new(&quiver, dims.to_vec()).unwrap();
        Case { name, quiver, dims }
    }

    /// `Σ_a d_{h(a)} d_{t(a)}`.
    pub fn matrix_entries(&self) -> usize {
        self.quiver
            .arrows()
            .iter()
            .map(|a| self.dims.get(a.head) * self.dims.get(a.tail))
            .sum()
    }
}

/// Small fence quivers, at most 8 matrix entries each. Dimension vectors list
/// heads first, then tails.
pub fn corpus() -> Vec<Case> {
    let one = |name, dims: &[usize]| Case::new(name, &["h"], &["t"], &[("t", "h")], dims);
    let star = |name, dims: &[usize]| {
        let tails: Vec<&str> = ["t1", "t2", "t3"][..dims.len() - 1].to_vec();
        let arrows: Vec<(&str, &str)> = tails.iter().map(|t| (*t, "h")).collect();
        Case::new(name, &["h"], &tails, &arrows, dims)
    };
    let shared = |name, dims: &[usize]| Case::new(name, &["h1", "h2"], &["t"], &[("t", "h1"), ("t", "h2")], dims);
    let parallel = |name, dims: &[usize]| Case::new(name, &["h"], &["t"], &[("t", "h"), ("t", "h")], dims);
    vec![
        one("arrow 1-1", &[1, 1]),
        one("arrow 2-1", &[2, 1]),
        one("arrow 1-2", &[1, 2]),
        one("arrow 2-2", &[2, 2]),
        star("star 2;1,1", &[2, 1, 1]),
        star("star 2;2,1", &[2, 2, 1]),
        star("star 2;1,1,1", &[2, 1, 1, 1]),
        shared("shared tail 1,1;2", &[1, 1, 2]),
        shared("shared tail 2,1;2", &[2, 1, 2]),
        parallel("parallel 1-1", &[1, 1]),
        parallel("parallel 2-1", &[2, 1]),
        parallel("parallel 2-2", &[2, 2]),
        Case::new(
            "zigzag 2,1;1,1,1",
            &["h1", "h2"],
            &["t1", "t2", "t3"],
            &[("t1", "h1"), ("t2", "h1"), ("t2", "h2"), ("t3", "h2")],
            &[2, 1, 1, 1, 1],
        ),
    ]
}

/// Every tuple choosing one entry from each list.
pub fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect()
    })
}
