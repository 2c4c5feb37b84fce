//! Coalition structures over the player set `{1..n}`.
//!
//! A [`Partition`] stores the nonempty blocks of a partition of `{1..n}` in
//! canonical form: members ascending inside each block, blocks ordered by
//! their smallest member. The empty coalition is not stored as a block; it is
//! accepted as a join target by [`Partition::move_to`] so that a group can
//! always break away and stand alone.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A player id (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Player(pub u32);

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for Player {
    fn from(id: u32) -> Self {
        Player(id)
    }
}

/// A set of players. The empty set stands for "go it alone" when used as a
/// join target.
pub type Coalition = BTreeSet<Player>;

/// Builds a coalition from raw ids; handy in tests and examples.
pub fn coalition<I: IntoIterator<Item = u32>>(ids: I) -> Coalition {
    ids.into_iter().map(Player).collect()
}

/// A partition of `{1..n}` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    n: u32,
    blocks: Vec<Coalition>,
    /// `block_of[i-1]` is the index into `blocks` of player `i`'s block.
    block_of: Vec<u32>,
}

impl Partition {
    /// Assembles a partition of `{1..n}` from blocks, checking that the
    /// blocks are nonempty, pairwise disjoint and cover the player set.
    pub fn new(n: u32, blocks: Vec<Coalition>) -> Result<Self> {
        let mut sorted: Vec<Coalition> = blocks.into_iter().collect();
        sorted.retain(|b| !b.is_empty());
        sorted.sort_by_key(|b| *b.iter().next().expect("nonempty block"));
        let mut block_of = vec![u32::MAX; n as usize];
        for (idx, block) in sorted.iter().enumerate() {
            for &Player(p) in block {
                if p == 0 || p > n {
                    return Err(Error::UnknownPlayer { player: Player(p), n });
                }
                if block_of[(p - 1) as usize] != u32::MAX {
                    return Err(Error::parse(0, format!("player {p} appears in two blocks")));
                }
                block_of[(p - 1) as usize] = idx as u32;
            }
        }
        if let Some(p) = block_of.iter().position(|&b| b == u32::MAX) {
            return Err(Error::parse(
                0,
                format!("player {} is missing from the partition", p + 1),
            ));
        }
        Ok(Partition {
            n,
            blocks: sorted,
            block_of,
        })
    }

    /// The partition of `{1..n}` into singletons.
    pub fn singletons(n: u32) -> Self {
        Partition::new(n, (1..=n).map(|i| coalition([i])).collect())
            .expect("singleton blocks form a partition")
    }

    /// The one-block partition `{{1..n}}`.
    pub fn grand(n: u32) -> Self {
        Partition::new(n, vec![coalition(1..=n)]).expect("the grand coalition is a partition")
    }

    /// Number of players in the ambient set.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The blocks in canonical order.
    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    fn check_player(&self, i: Player) -> Result<()> {
        if i.0 == 0 || i.0 > self.n {
            return Err(Error::UnknownPlayer {
                player: i,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The block containing player `i` (written `π(i)`).
    pub fn coalition_of(&self, i: Player) -> Result<&Coalition> {
        self.check_player(i)?;
        Ok(&self.blocks[self.block_of[(i.0 - 1) as usize] as usize])
    }

    /// Whether players `i` and `j` share a block.
    pub fn same_block(&self, i: Player, j: Player) -> Result<bool> {
        self.check_player(i)?;
        self.check_player(j)?;
        Ok(self.block_of[(i.0 - 1) as usize] == self.block_of[(j.0 - 1) as usize])
    }

    /// Restriction `π|_T`: the nonempty intersections of blocks with `T`.
    /// The empty coalition is not listed; it is always a legal join target
    /// for [`Partition::move_to`].
    pub fn restrict(&self, t: &Coalition) -> BTreeSet<Coalition> {
        self.blocks
            .iter()
            .map(|b| b.intersection(t).copied().collect::<Coalition>())
            .filter(|b| !b.is_empty())
            .collect()
    }

    /// Restriction `π|_{-T}` to the complement of `T`.
    pub fn restrict_minus(&self, t: &Coalition) -> BTreeSet<Coalition> {
        let complement: Coalition = (1..=self.n).map(Player).filter(|p| !t.contains(p)).collect();
        self.restrict(&complement)
    }

    /// The deviation `π[T→S]`: the players of `T` leave their blocks and join
    /// `S`, which must be a block of `π|_{-T}` or the empty coalition.
    pub fn move_to(&self, t: &Coalition, s: &Coalition) -> Result<Partition> {
        if t.is_empty() {
            return Err(Error::EmptyGroup);
        }
        for &p in t {
            self.check_player(p)?;
        }
        let residual = self.restrict_minus(t);
        if !s.is_empty() && !residual.contains(s) {
            return Err(Error::IllegalMoveTarget {
                target: s.iter().copied().collect(),
            });
        }
        let mut blocks: Vec<Coalition> = residual.into_iter().filter(|b| b != s).collect();
        blocks.push(s.union(t).copied().collect());
        Partition::new(self.n, blocks)
    }

    /// The exchange `π[i⇄j]`: players `i` and `j` trade places. When they
    /// already share a block the partition is unchanged.
    pub fn swap(&self, i: Player, j: Player) -> Result<Partition> {
        if i == j {
            return Err(Error::SamePlayer { player: i });
        }
        self.check_player(i)?;
        self.check_player(j)?;
        if self.same_block(i, j)? {
            return Ok(self.clone());
        }
        let bi = self.coalition_of(i)?;
        let bj = self.coalition_of(j)?;
        let mut blocks: Vec<Coalition> = self
            .blocks
            .iter()
            .filter(|b| *b != bi && *b != bj)
            .cloned()
            .collect();
        let mut new_i: Coalition = bi.iter().copied().filter(|&p| p != i).collect();
        new_i.insert(j);
        let mut new_j: Coalition = bj.iter().copied().filter(|&p| p != j).collect();
        new_j.insert(i);
        blocks.push(new_i);
        blocks.push(new_j);
        Partition::new(self.n, blocks)
    }
}

/// Canonical text form: members joined by `,` inside a block, blocks joined
/// by `|`, e.g. `1,2,3|4`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, block) in self.blocks.iter().enumerate() {
            if bi > 0 {
                f.write_str("|")?;
            }
            for (pi, p) in block.iter().enumerate() {
                if pi > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

/// Parses partition text such as `1,2,3|4` (spaces allowed). The ambient
/// player set is `{1..max}` for the largest id mentioned, and every player in
/// it must appear exactly once.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut blocks: Vec<Coalition> = Vec::new();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut offset = 0usize;
    for block_text in text.split('|') {
        let mut block = Coalition::new();
        for member_text in block_text.split(',') {
            let trimmed = member_text.trim();
            let pos = offset + leading_ws(member_text);
            if trimmed.is_empty() {
                return Err(Error::parse(pos, "expected a player id"));
            }
            let id: u32 = trimmed
                .parse()
                .map_err(|_| Error::parse(pos, format!("`{trimmed}` is not a player id")))?;
            if id == 0 {
                return Err(Error::parse(pos, "player ids start at 1"));
            }
            if !seen.insert(id) {
                return Err(Error::parse(pos, format!("player {id} appears twice")));
            }
            block.insert(Player(id));
            offset += member_text.len() + 1;
        }
        blocks.push(block);
    }
    let n = *seen.iter().next_back().expect("at least one player parsed");
    if let Some(missing) = (1..=n).find(|id| !seen.contains(id)) {
        return Err(Error::parse(
            0,
            format!("player {missing} is missing from the partition"),
        ));
    }
    Partition::new(n, blocks)
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

/// Iterator over every partition of `{1..n}`, in restricted-growth-string
/// order. `n` is limited to 12 (Bell numbers explode).
pub fn enumerate_partitions(n: u32) -> Result<PartitionIter> {
    if n == 0 || n > 12 {
        return Err(Error::Guard {
            what: "partition enumeration",
            n,
            max: 12,
            hint: "",
        });
    }
    Ok(PartitionIter {
        n,
        rgs: None,
        done: false,
    })
}

/// See [`enumerate_partitions`]. A restricted growth string `a` encodes the
/// partition whose blocks are the level sets of `a`; `a[0] = 0` and each
/// entry is at most `max(previous) + 1`.
pub struct PartitionIter {
    n: u32,
    rgs: Option<Vec<u8>>,
    done: bool,
}

fn emit(n: u32, rgs: &[u8]) -> Partition {
    let nblocks = *rgs.iter().max().expect("nonempty rgs") as usize + 1;
    let mut blocks = vec![Coalition::new(); nblocks];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b as usize].insert(Player(i as u32 + 1));
    }
    Partition::new(n, blocks).expect("restricted growth strings encode partitions")
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let n = self.n;
        match &mut self.rgs {
            None => {
                let rgs = vec![0u8; n as usize];
                let out = emit(n, &rgs);
                self.rgs = Some(rgs);
                Some(out)
            }
            Some(rgs) => {
                // Find the rightmost position that can still grow.
                let mut i = rgs.len();
                loop {
                    if i <= 1 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    let cap = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
                    if rgs[i] < cap {
                        rgs[i] += 1;
                        for e in rgs[i + 1..].iter_mut() {
                            *e = 0;
                        }
                        break;
                    }
                }
                let out = emit(n, rgs);
                Some(out)
            }
        }
    }
}
