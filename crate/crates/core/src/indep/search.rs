//! Local search for large independent line sets.
//!
//! A non-member line is *blocked* when some face of size at least two has
//! every bounding line but it in the set. Blocked counts and conflict scores
//! are kept per line and updated face by face, so adding or removing a line
//! costs time proportional to the faces it bounds.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::arrangement::Arrangement;

pub struct LocalSearch<'a> {
    arr: &'a Arrangement,
    member: Vec<bool>,
    size: usize,
    /// Members on each face.
    hits: Vec<u32>,
    /// Faces on which the line is the only non-member.
    blocked: Vec<u32>,
    /// Faces on which the line is one of exactly two non-members, i.e. how
    /// many lines adding it would block.
    score: Vec<u32>,
    /// Scratch counters for swap probes.
    probe: Vec<u32>,
    /// Membership changes since the last checkpoint, for rollback.
    journal: Vec<(usize, bool)>,
}

impl<'a> LocalSearch<'a> {
    /// Starts from `set`, which must be independent.
    pub fn new(arr: &'a Arrangement, set: &[usize]) -> Self {
        let n = arr.num_lines();
        let mut s = LocalSearch {
            arr,
            member: vec![false; n],
            size: 0,
            hits: vec![0; arr.num_faces()],
            blocked: vec![0; n],
            score: vec![0; n],
            probe: vec![0; n],
            journal: Vec::new(),
        };
        for f in 0..arr.num_faces() {
            s.account(f, 1);
        }
        for &l in set {
            debug_assert!(s.is_free(l));
            s.add(l);
        }
        s.journal.clear();
        s
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&l| self.member[l]).collect()
    }

    /// Whether `l` can join without making a face bad.
    pub fn is_free(&self, l: usize) -> bool {
        !self.member[l] && self.blocked[l] == 0
    }

    fn face_lines(&self, f: usize) -> &'a [u32] {
        self.arr.face(f).bounding_lines
    }

    /// Adds (`sign = 1`) or retracts (`sign = -1`) the contribution of face
    /// `f` to the counters of its non-member lines.
    fn account(&mut self, f: usize, sign: i32) {
        let lines = self.face_lines(f);
        if lines.len() < 2 {
            return;
        }
        let open = lines.len() as u32 - self.hits[f];
        let counter = match open {
            1 => &mut self.blocked,
            2 => &mut self.score,
            _ => return,
        };
        for &m in lines {
            if !self.member[m as usize] {
                let c = &mut counter[m as usize];
                *c = c.wrapping_add_signed(sign);
            }
        }
    }

    fn set(&mut self, l: usize, on: bool) {
        let faces = self.arr.line_faces(l);
        for &f in faces {
            self.account(f as usize, -1);
        }
        self.member[l] = on;
        for &f in faces {
            let h = &mut self.hits[f as usize];
            *h = if on { *h + 1 } else { *h - 1 };
            self.account(f as usize, 1);
        }
        if on {
            self.size += 1;
        } else {
            self.size -= 1;
        }
        self.journal.push((l, on));
    }

    fn add(&mut self, l: usize) {
        debug_assert!(self.is_free(l));
        self.set(l, true);
    }

    fn remove(&mut self, l: usize) {
        debug_assert!(self.member[l]);
        self.set(l, false);
    }

    fn rollback(&mut self, mark: usize) {
        while self.journal.len() > mark {
            let (l, on) = self.journal.pop().expect("nonempty");
            self.set(l, !on);
            self.journal.pop();
        }
    }

    /// Grows the set to a maximal one, each step adding the free line that
    /// blocks the fewest others (random tie-break). Returns the number added.
    pub fn extend<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let n = self.member.len();
        let mut heap: BinaryHeap<Reverse<(u32, u64, usize)>> =
            (0..n).filter(|&l| self.is_free(l)).map(|l| Reverse((self.score[l], rng.random(), l))).collect();
        let mut added = 0;
        while let Some(Reverse((s, tie, l))) = heap.pop() {
            if !self.is_free(l) {
                continue;
            }
            if s != self.score[l] {
                heap.push(Reverse((self.score[l], tie, l)));
                continue;
            }
            self.add(l);
            added += 1;
        }
        added
    }

    /// Non-members that removing member `x` would unblock.
    fn freed_by(&mut self, x: usize) -> Vec<usize> {
        let mut touched = Vec::new();
        for &f in self.arr.line_faces(x) {
            let f = f as usize;
            let lines = self.face_lines(f);
            if lines.len() >= 2 && self.hits[f] + 1 == lines.len() as u32 {
                let m = *lines.iter().find(|&&m| !self.member[m as usize]).expect("one open line") as usize;
                if self.probe[m] == 0 {
                    touched.push(m);
                }
                self.probe[m] += 1;
            }
        }
        let freed = touched.iter().copied().filter(|&m| self.probe[m] == self.blocked[m]).collect();
        for m in touched {
            self.probe[m] = 0;
        }
        freed
    }

    /// One pass of (1,2)-swaps: a member whose removal unblocks two lines
    /// that fit together is traded for them. Returns the net growth.
    fn swap_pass<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let start = self.size;
        let mut members = self.members();
        members.shuffle(rng);
        for x in members {
            if !self.member[x] {
                continue;
            }
            let mut freed = self.freed_by(x);
            if freed.len() < 2 {
                continue;
            }
            freed.shuffle(rng);
            let mark = self.journal.len();
            self.remove(x);
            let mut added = 0;
            for m in freed {
                if self.is_free(m) {
                    self.add(m);
                    added += 1;
                }
            }
            if added < 2 {
                self.rollback(mark);
            }
        }
        self.size - start
    }

    fn local_optimum<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        self.extend(rng);
        while self.swap_pass(rng) > 0 {
            self.extend(rng);
        }
    }

    /// Iterated local search: reach a swap-local optimum, then `rounds`
    /// times force a random non-member in (evicting one member of every
    /// face that would turn bad), re-optimize, and undo the round if the set
    /// shrank. Returns the net growth.
    pub fn improve<R: Rng + ?Sized>(&mut self, rounds: usize, rng: &mut R) -> usize {
        let start = self.size;
        self.journal.clear();
        self.local_optimum(rng);
        let outside_count = self.member.len() - self.size;
        for _ in 0..rounds {
            if outside_count == 0 || self.size == self.member.len() {
                break;
            }
            self.journal.clear();
            let before = self.size;
            let outside: Vec<usize> = (0..self.member.len()).filter(|&l| !self.member[l]).collect();
            let m = outside[rng.random_range(0..outside.len())];
            for &f in self.arr.line_faces(m) {
                let f = f as usize;
                let lines = self.face_lines(f);
                if lines.len() >= 2 && self.hits[f] + 1 == lines.len() as u32 {
                    let on_face: Vec<usize> =
                        lines.iter().map(|&x| x as usize).filter(|&x| self.member[x]).collect();
                    let &x = on_face.choose(rng).expect("face has members");
                    self.remove(x);
                }
            }
            self.add(m);
            self.local_optimum(rng);
            if self.size < before {
                self.rollback(0);
            }
        }
        self.journal.clear();
        self.size - start
    }

    /// Recounts every counter from scratch and compares.
    #[cfg(test)]
    pub(crate) fn counters_consistent(&self) -> bool {
        let fresh = LocalSearch::new(self.arr, &self.members());
        fresh.size == self.size
            && fresh.hits == self.hits
            && (0..self.member.len())
                .filter(|&l| !self.member[l])
                .all(|l| fresh.blocked[l] == self.blocked[l] && fresh.score[l] == self.score[l])
    }
}
