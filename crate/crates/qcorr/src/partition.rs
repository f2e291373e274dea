//! Cluster partitions of subsystem labels and binary split trees.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A partition of `{1..N}` into disjoint nonempty clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n_subsystems: usize,
    clusters: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n_subsystems: usize, clusters: Vec<Vec<usize>>) -> Result<Self> {
        if clusters.is_empty() {
            return Err(Error::InvalidPartition("no clusters".into()));
        }
        let mut seen = BTreeSet::new();
        let mut sorted_clusters = Vec::with_capacity(clusters.len());
        for cluster in clusters {
            if cluster.is_empty() {
                return Err(Error::InvalidPartition("empty cluster".into()));
            }
            let mut c = cluster;
            c.sort_unstable();
            for &s in &c {
                if s == 0 || s > n_subsystems {
                    return Err(Error::InvalidPartition(format!(
                        "subsystem {s} out of range 1..={n_subsystems}"
                    )));
                }
                if !seen.insert(s) {
                    return Err(Error::InvalidPartition(format!(
                        "subsystem {s} appears in more than one cluster"
                    )));
                }
            }
            sorted_clusters.push(c);
        }
        if seen.len() != n_subsystems {
            return Err(Error::InvalidPartition(format!(
                "clusters cover {} of {} subsystems",
                seen.len(),
                n_subsystems
            )));
        }
        Ok(Self {
            n_subsystems,
            clusters: sorted_clusters,
        })
    }

    /// The finest partition: every subsystem its own cluster.
    pub fn singletons(n: usize) -> Self {
        Self {
            n_subsystems: n,
            clusters: (1..=n).map(|s| vec![s]).collect(),
        }
    }

    pub fn n_subsystems(&self) -> usize {
        self.n_subsystems
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .clusters
            .iter()
            .map(|c| {
                let members: Vec<String> = c.iter().map(|s| s.to_string()).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        write!(f, "{}", rendered.join("|"))
    }
}

/// Parses the cluster list of a partition over `{1..n}`: clusters separated
/// by `|`, members by `,`, braces optional. Example: `{1}|{2,3}`.
pub fn parse_partition(s: &str, n: usize) -> Result<Partition> {
    let mut clusters = Vec::new();
    for chunk in s.split('|') {
        clusters.push(parse_cluster(chunk)?);
    }
    Partition::new(n, clusters)
}

/// Parses a single cluster like `2,3` or `{2,3}`.
pub fn parse_cluster(s: &str) -> Result<Vec<usize>> {
    let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}');
    if trimmed.is_empty() {
        return Err(Error::InvalidPartition(format!("empty cluster in '{s}'")));
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim().parse::<usize>().map_err(|_| {
                Error::InvalidPartition(format!("'{tok}' is not a subsystem label"))
            })
        })
        .collect()
}

/// All set partitions of `{1..n}` in restricted-growth-string lexicographic
/// order. The RGS `a` assigns subsystem `i+1` to cluster `a[i]`, with
/// `a[0] = 0` and `a[i] <= max(a[0..i]) + 1`.
pub fn set_partitions(n: usize) -> Vec<Partition> {
    assert!(n >= 1, "need at least one subsystem");
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().max().copied().unwrap_or(0) + 1;
        let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &c) in rgs.iter().enumerate() {
            clusters[c].push(i + 1);
        }
        out.push(Partition {
            n_subsystems: n,
            clusters,
        });

        // next RGS in lexicographic order
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().max().copied().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for item in rgs.iter_mut().skip(i + 1) {
                    *item = 0;
                }
                break;
            }
        }
    }
}

/// Binary split tree whose leaves are subsystem labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitTree {
    Leaf(usize),
    Node(Box<SplitTree>, Box<SplitTree>),
}

impl SplitTree {
    pub fn node(left: SplitTree, right: SplitTree) -> Self {
        SplitTree::Node(Box::new(left), Box::new(right))
    }

    /// Right-leaning chain `(1, (2, (3, ...)))`.
    pub fn caterpillar(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSplitTree("no subsystems".into()));
        }
        let mut tree = SplitTree::Leaf(n);
        for s in (1..n).rev() {
            tree = SplitTree::node(SplitTree::Leaf(s), tree);
        }
        Ok(tree)
    }

    /// Balanced tree over `1..=n`.
    pub fn balanced(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSplitTree("no subsystems".into()));
        }
        fn build(lo: usize, hi: usize) -> SplitTree {
            if lo == hi {
                SplitTree::Leaf(lo)
            } else {
                let mid = (lo + hi) / 2;
                SplitTree::node(build(lo, mid), build(mid + 1, hi))
            }
        }
        Ok(build(1, n))
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            SplitTree::Leaf(s) => vec![*s],
            SplitTree::Node(l, r) => {
                let mut out = l.leaves();
                out.extend(r.leaves());
                out
            }
        }
    }

    /// Checks that the leaves are exactly `{1..n}`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let leaves = self.leaves();
        let set: BTreeSet<usize> = leaves.iter().copied().collect();
        if set.len() != leaves.len() {
            return Err(Error::InvalidSplitTree("duplicate leaf".into()));
        }
        let expected: BTreeSet<usize> = (1..=n).collect();
        if set != expected {
            return Err(Error::InvalidSplitTree(format!(
                "leaves {set:?} do not cover 1..={n}"
            )));
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `{1}|{2,3}` inferring `N` as the largest label mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let mut clusters = Vec::new();
        let mut max = 0usize;
        for chunk in s.split('|') {
            let cluster = parse_cluster(chunk)?;
            max = max.max(cluster.iter().copied().max().unwrap_or(0));
            clusters.push(cluster);
        }
        Partition::new(max, clusters)
    }
}
