//! Words in the groups `B(n,N)` whose generators satisfy the n-simplex
//! relations: Yang-Baxter for n = 2, the tetrahedron equation for n = 3.
//!
//! Rewriting is done through explicit, replayable moves: `commute`
//! swaps an adjacent independent pair, `simplex` reverses a contiguous
//! ascending block of the n+1 letters of one relation. The reversal of
//! the full lexicographic word is built by the recursive construction
//! behind the `W = W-bar` identity: split off the letters containing the
//! top index, reverse the rest, then replay the one-level-down reversal
//! on the lifted block, emitting one simplex move per twist letter.

use std::collections::HashSet;
use std::fmt;

use crate::dilog::{e_ab, e_lambda, qexp, verify_identity, IdentityReport, Lambda};
use crate::ncalgebra::{normal_order, Algebra, Monomial, NcPoly};
use crate::qfield::RationalFunction;
use crate::quiver::{MapKind, Vertex, VertexMap};
use crate::{Error, Result};

pub(crate) fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Generator label: a strictly increasing tuple of indices in `[1, N]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenLabel {
    indices: Vec<u8>,
}

impl GenLabel {
    pub fn new(indices: Vec<u8>) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "generator indices {indices:?} are not strictly increasing"
            )));
        }
        Ok(GenLabel { indices })
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn arity(&self) -> usize {
        self.indices.len()
    }

    fn shared_count(&self, other: &GenLabel) -> usize {
        self.indices.iter().filter(|i| other.indices.contains(i)).count()
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R")?;
        if self.indices.iter().all(|&i| i < 10) {
            for i in &self.indices {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.indices.iter().map(u8::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Two generators commute unless they share exactly `n - 1` indices.
pub fn commutes(a: &GenLabel, b: &GenLabel) -> bool {
    debug_assert_eq!(a.arity(), b.arity());
    a.shared_count(b) != a.arity() - 1
}

/// Factor order of the canonical words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOrder {
    Lex,
    Colex,
    LexReversed,
    ColexReversed,
}

/// A word in `B(n,N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    n: u8,
    bound: u8,
    letters: Vec<GenLabel>,
}

impl Word {
    pub fn new(n: u8, bound: u8, letters: Vec<GenLabel>) -> Result<Self> {
        for l in &letters {
            if l.arity() != n as usize || *l.indices().last().unwrap() > bound {
                return Err(Error::InvalidArgument(format!(
                    "letter {l} does not belong to B({n},{bound})"
                )));
            }
        }
        Ok(Word { n, bound, letters })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn bound(&self) -> u8 {
        self.bound
    }

    pub fn letters(&self) -> &[GenLabel] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters, ..self.clone() }
    }

    /// Append `top` to every letter: the bracket-lift into `B(n+1, top)`.
    pub fn lifted(&self, top: u8) -> Word {
        assert!(top > self.bound);
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let mut idx = l.indices().to_vec();
                idx.push(top);
                GenLabel { indices: idx }
            })
            .collect();
        Word { n: self.n + 1, bound: top, letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(GenLabel::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn combinations(bound: u8, n: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 || n > bound {
        return out;
    }
    let mut cur: Vec<u8> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination in lexicographic order
        let mut i = n as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < bound - (n - 1 - i as u8) {
                cur[i] += 1;
                for k in (i + 1)..n as usize {
                    cur[k] = cur[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The word containing every generator of `B(n,N)` once, in the requested
/// order: `lex` compares tuples from the left, `colex` from the right.
pub fn word_w(n: u8, bound: u8, order: WordOrder) -> Result<Word> {
    if n == 0 || n > bound {
        return Err(Error::InvalidArgument(format!(
            "no word W({n},{bound}): need 1 <= n <= N"
        )));
    }
    let mut combos = combinations(bound, n);
    match order {
        WordOrder::Lex => {}
        WordOrder::Colex => combos.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev())),
        WordOrder::LexReversed => combos.reverse(),
        WordOrder::ColexReversed => combos.sort_by(|a, b| b.iter().rev().cmp(a.iter().rev())),
    }
    let letters = combos.into_iter().map(|indices| GenLabel { indices }).collect();
    Ok(Word { n, bound, letters })
}

/// The letterwise involution `R_{a_1..a_n} -> R_{N+1-a_n, .., N+1-a_1}`.
pub fn omega_map(w: &Word) -> Word {
    let letters = w
        .letters
        .iter()
        .map(|l| {
            let mut idx: Vec<u8> = l.indices().iter().map(|&a| w.bound + 1 - a).collect();
            idx.reverse();
            GenLabel { indices: idx }
        })
        .collect();
    Word { letters, ..w.clone() }
}

/// One rewriting step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Swap the independent letters at `pos`, `pos + 1`.
    Commute { pos: usize },
    /// Reverse the block of n+1 letters of the simplex relation for
    /// `tuple` at `pos`: forward rewrites the ascending block into the
    /// descending one, backward the other way.
    Simplex { pos: usize, tuple: Vec<u8>, forward: bool },
}

impl Move {
    pub fn is_simplex(&self) -> bool {
        matches!(self, Move::Simplex { .. })
    }
}

/// The n+1 letters of the relation for `tuple`, ascending: dropping a
/// later index yields a lexicographically smaller letter.
fn simplex_block(tuple: &[u8]) -> Vec<GenLabel> {
    (0..tuple.len())
        .rev()
        .map(|j| {
            let mut idx = tuple.to_vec();
            idx.remove(j);
            GenLabel { indices: idx }
        })
        .collect()
}

/// Apply one move, checking its side conditions.
pub fn apply_move(w: &Word, m: &Move) -> Result<Word> {
    let mut out = w.clone();
    match m {
        Move::Commute { pos } => {
            let pos = *pos;
            if pos + 1 >= w.len() {
                return Err(Error::InvalidMove(format!(
                    "commute at {pos} runs past the word of length {}",
                    w.len()
                )));
            }
            let (a, b) = (&w.letters[pos], &w.letters[pos + 1]);
            if !commutes(a, b) {
                return Err(Error::InvalidMove(format!(
                    "letters {a} and {b} share n-1 indices and do not commute"
                )));
            }
            out.letters.swap(pos, pos + 1);
        }
        Move::Simplex { pos, tuple, forward } => {
            let pos = *pos;
            let arity = w.n as usize;
            if tuple.len() != arity + 1 || tuple.windows(2).any(|t| t[0] >= t[1]) {
                return Err(Error::InvalidMove(format!(
                    "simplex tuple {tuple:?} is not a strictly increasing {}-tuple",
                    arity + 1
                )));
            }
            if pos + arity + 1 > w.len() {
                return Err(Error::InvalidMove(format!(
                    "simplex block at {pos} runs past the word of length {}",
                    w.len()
                )));
            }
            let mut block = simplex_block(tuple);
            if !*forward {
                block.reverse();
            }
            let actual = &w.letters[pos..pos + arity + 1];
            if actual != block.as_slice() {
                return Err(Error::InvalidMove(format!(
                    "simplex block at {pos} is [{}], expected [{}]",
                    actual.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "),
                    block.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
                )));
            }
            out.letters[pos..pos + arity + 1].reverse();
        }
    }
    Ok(out)
}

/// Trace-monoid equality decided by the projection criterion: equal letter
/// multisets, and equal projections onto every dependent letter pair.
pub fn trace_equal(w1: &Word, w2: &Word) -> bool {
    if w1.n != w2.n || w1.bound != w2.bound || w1.len() != w2.len() {
        return false;
    }
    let mut s1 = w1.letters.clone();
    let mut s2 = w2.letters.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return false;
    }
    s1.dedup();
    for (i, a) in s1.iter().enumerate() {
        for b in &s1[i + 1..] {
            if commutes(a, b) {
                continue;
            }
            let proj = |w: &Word| -> Vec<GenLabel> {
                w.letters.iter().filter(|l| *l == a || *l == b).cloned().collect()
            };
            if proj(w1) != proj(w2) {
                return false;
            }
        }
    }
    true
}

/// Breadth-first search over commute moves alone, used to cross-validate
/// [`trace_equal`] on small instances. Bidirectional so the ten-letter
/// words stay tractable.
pub fn bfs_trace_equal(w1: &Word, w2: &Word, state_cap: usize) -> Result<bool> {
    if w1.n != w2.n || w1.bound != w2.bound || w1.len() != w2.len() {
        return Ok(false);
    }
    if w1 == w2 {
        return Ok(true);
    }
    let neighbors = |w: &Word| -> Vec<Word> {
        (0..w.len().saturating_sub(1))
            .filter_map(|pos| apply_move(w, &Move::Commute { pos }).ok())
            .collect()
    };
    let mut seen_a: HashSet<Word> = HashSet::from([w1.clone()]);
    let mut seen_b: HashSet<Word> = HashSet::from([w2.clone()]);
    let mut frontier_a = vec![w1.clone()];
    let mut frontier_b = vec![w2.clone()];
    while !frontier_a.is_empty() || !frontier_b.is_empty() {
        // expand the smaller nonempty side
        let expand_a = !frontier_a.is_empty()
            && (frontier_b.is_empty() || frontier_a.len() <= frontier_b.len());
        let (frontier, seen, other_seen) = if expand_a {
            (&mut frontier_a, &mut seen_a, &seen_b)
        } else {
            (&mut frontier_b, &mut seen_b, &seen_a)
        };
        let mut next = Vec::new();
        for w in frontier.drain(..) {
            for nb in neighbors(&w) {
                if other_seen.contains(&nb) {
                    return Ok(true);
                }
                if seen.insert(nb.clone()) {
                    next.push(nb);
                }
            }
        }
        *frontier = next;
        if seen_a.len() + seen_b.len() > state_cap {
            return Err(Error::InvalidArgument(format!(
                "commute-move search exceeded {state_cap} states"
            )));
        }
    }
    Ok(false)
}

/// A replayable rewrite from `start` to `end`.
#[derive(Clone, Debug)]
pub struct ProofTrace {
    pub start: Word,
    pub moves: Vec<Move>,
    pub end: Word,
}

impl ProofTrace {
    pub fn simplex_count(&self) -> usize {
        self.moves.iter().filter(|m| m.is_simplex()).count()
    }

    /// Replay every move, failing on the first invalid one or on a wrong
    /// final word.
    pub fn replay(&self) -> Result<()> {
        let mut w = self.start.clone();
        for (idx, m) in self.moves.iter().enumerate() {
            w = apply_move(&w, m).map_err(|e| Error::InvalidMove(format!("move {idx}: {e}")))?;
        }
        if w != self.end {
            return Err(Error::InvalidMove(format!(
                "trace ends at `{w}`, declared end `{}`",
                self.end
            )));
        }
        Ok(())
    }

    /// Line-oriented text form: header `n N len`, then one move per line,
    /// `C pos` or `S pos a1 .. a_{n+1} F|B`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.start.n, self.start.bound, self.moves.len());
        for m in &self.moves {
            match m {
                Move::Commute { pos } => out.push_str(&format!("C {pos}\n")),
                Move::Simplex { pos, tuple, forward } => {
                    let t: Vec<String> = tuple.iter().map(u8::to_string).collect();
                    out.push_str(&format!(
                        "S {pos} {} {}\n",
                        t.join(" "),
                        if *forward { "F" } else { "B" }
                    ));
                }
            }
        }
        out
    }

    /// Parse the text form; the start word is the canonical lex word and
    /// the end is obtained by replay.
    pub fn parse(text: &str) -> Result<ProofTrace> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty trace".into()))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header `{header}`"))))
            .collect::<Result<_>>()?;
        if head.len() != 3 {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let (n, bound, len) = (head[0] as u8, head[1] as u8, head[2]);
        let start = word_w(n, bound, WordOrder::Lex)?;
        let mut moves = Vec::with_capacity(len);
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["C", pos] => moves.push(Move::Commute {
                    pos: pos.parse().map_err(|_| Error::Parse(format!("bad move `{line}`")))?,
                }),
                ["S", pos, rest @ .., dir] if !rest.is_empty() => {
                    let tuple: Vec<u8> = rest
                        .iter()
                        .map(|t| {
                            t.parse().map_err(|_| Error::Parse(format!("bad move `{line}`")))
                        })
                        .collect::<Result<_>>()?;
                    let forward = match *dir {
                        "F" => true,
                        "B" => false,
                        _ => return Err(Error::Parse(format!("bad direction in `{line}`"))),
                    };
                    moves.push(Move::Simplex {
                        pos: pos.parse().map_err(|_| Error::Parse(format!("bad move `{line}`")))?,
                        tuple,
                        forward,
                    });
                }
                _ => return Err(Error::Parse(format!("bad move `{line}`"))),
            }
        }
        if moves.len() != len {
            return Err(Error::Parse(format!(
                "header declares {len} moves, found {}",
                moves.len()
            )));
        }
        let mut end = start.clone();
        for m in &moves {
            end = apply_move(&end, m)?;
        }
        Ok(ProofTrace { start, moves, end })
    }
}

/// Accumulates a word rewrite, validating every emitted move.
struct TraceBuilder {
    word: Word,
    moves: Vec<Move>,
}

impl TraceBuilder {
    fn new(word: Word) -> Self {
        TraceBuilder { word, moves: Vec::new() }
    }

    fn push(&mut self, m: Move) {
        self.word = apply_move(&self.word, &m)
            .unwrap_or_else(|e| panic!("internal move invalid: {e} (word `{}`)", self.word));
        self.moves.push(m);
    }

    fn commute(&mut self, pos: usize) {
        self.push(Move::Commute { pos });
    }

    fn simplex_forward(&mut self, pos: usize, tuple: Vec<u8>) {
        self.push(Move::Simplex { pos, tuple, forward: true });
    }

    /// Move the letter at `from` to `to` through commute swaps.
    fn bubble(&mut self, from: usize, to: usize) {
        if from <= to {
            for p in from..to {
                self.commute(p);
            }
        } else {
            for p in (to..from).rev() {
                self.commute(p);
            }
        }
    }

    fn position_of(&self, letter: &GenLabel) -> usize {
        self.word
            .letters
            .iter()
            .position(|l| l == letter)
            .unwrap_or_else(|| panic!("letter {letter} not in word `{}`", self.word))
    }

    /// Commute-sort the current word into `target`, which must be a
    /// permutation reachable by commutation alone.
    fn commute_sort_to(&mut self, target: &[GenLabel]) {
        assert_eq!(self.word.len(), target.len());
        for i in 0..target.len() {
            let j = self.word.letters[i..]
                .iter()
                .position(|l| l == &target[i])
                .map(|p| p + i)
                .unwrap_or_else(|| panic!("target letter {} missing", target[i]));
            self.bubble(j, i);
        }
    }
}

/// Moves that reverse `W(n,bound)` into `W-bar(n,bound)`.
fn reversal_moves(n: u8, bound: u8) -> Vec<Move> {
    let total = choose(bound as usize, n as usize);
    if total <= 1 {
        return Vec::new();
    }
    let mut b = TraceBuilder::new(word_w(n, bound, WordOrder::Lex).expect("valid word"));

    if n == 1 {
        // every adjacent transposition is itself a 2-letter simplex move
        for step in 0..(total - 1) {
            for p in 0..(total - 1 - step) {
                let x = b.word.letters[p].indices()[0];
                let y = b.word.letters[p + 1].indices()[0];
                b.simplex_forward(p, vec![x, y]);
            }
        }
        return b.moves;
    }

    let prev = bound - 1;
    let xlen = choose(prev as usize, n as usize);
    let llen = choose(prev as usize, n as usize - 1);

    // phase 0: separate the letters containing `bound` to the right
    let prefix = word_w(n, prev, WordOrder::Lex).expect("valid word");
    let lifted = word_w(n - 1, prev, WordOrder::Lex).expect("valid word").lifted(bound);
    let mut target: Vec<GenLabel> = prefix.letters.clone();
    target.extend(lifted.letters.iter().cloned());
    b.commute_sort_to(&target);

    // phase 1: reverse the prefix recursively (its moves are position-local)
    for m in reversal_moves(n, prev) {
        b.push(m);
    }

    // phase 2: replay the (n-1)-level reversal on the lifted block; each
    // of its simplex moves becomes an (n+1)-tuple move fed by the twist
    // letter R_tuple pulled out of the reversed prefix
    let mut x_end = xlen;
    let mut y_start = x_end + llen;
    for m in reversal_moves(n - 1, prev) {
        match m {
            Move::Commute { pos } => b.commute(x_end + pos),
            Move::Simplex { tuple, forward, .. } => {
                assert!(forward, "generated traces use forward moves only");
                let twist = GenLabel { indices: tuple.clone() };
                let tpos = b.position_of(&twist);
                assert!(tpos < x_end, "twist letter escaped the prefix");
                // the ascending block starts with the twist, its
                // lex-smallest letter; locate the lifted remainder
                let mut first = tuple.clone();
                first.pop();
                first.push(bound);
                let bpos = b.position_of(&GenLabel { indices: first });
                b.bubble(tpos, bpos - 1);
                let mut full = tuple.clone();
                full.push(bound);
                b.simplex_forward(bpos - 1, full);
                // the twist exits to the right of the lifted zone
                x_end -= 1;
                y_start -= 1;
                b.bubble(bpos - 1 + n as usize, y_start);
            }
        }
    }
    assert_eq!(x_end, 0, "all twist letters consumed");

    // phase 3: interleave back into the reversed lexicographic word
    let target = word_w(n, bound, WordOrder::LexReversed).expect("valid word");
    b.commute_sort_to(&target.letters);
    b.moves
}

/// Constructive reversal `W(n,N) -> W-bar(n,N)`. The trace replays
/// validly and contains exactly `binom(N, n+1)` simplex moves.
pub fn reverse_via_moves(n: u8, bound: u8) -> Result<ProofTrace> {
    if n == 0 || n > bound {
        return Err(Error::InvalidArgument(format!(
            "no reversal for B({n},{bound}): need 1 <= n <= N"
        )));
    }
    let start = word_w(n, bound, WordOrder::Lex)?;
    let moves = reversal_moves(n, bound);
    let end = word_w(n, bound, WordOrder::LexReversed)?;
    let trace = ProofTrace { start, moves, end };
    trace.replay()?;
    Ok(trace)
}

/// The mirrored schedule: conjugate the left-start trace by the omega
/// involution and run it backwards, so every reordering starts from the
/// right. Produces a valid trace with the same simplex-move multiset.
pub fn reverse_via_moves_right(n: u8, bound: u8) -> Result<ProofTrace> {
    let left = reverse_via_moves(n, bound)?;
    let start = word_w(n, bound, WordOrder::Lex)?;
    let end = word_w(n, bound, WordOrder::LexReversed)?;

    let mut b = TraceBuilder::new(start.clone());
    // commute into the colex word, the omega image of the reversed lex word
    let colex = word_w(n, bound, WordOrder::Colex)?;
    b.commute_sort_to(&colex.letters);
    // replay the omega-conjugated left trace backwards; inverting its
    // omega-image (a backward move) makes every simplex move forward again
    for m in left.moves.iter().rev() {
        match m {
            Move::Commute { pos } => b.commute(*pos),
            Move::Simplex { pos, tuple, forward } => {
                assert!(forward);
                let mut omega_tuple: Vec<u8> = tuple.iter().map(|&a| bound + 1 - a).collect();
                omega_tuple.reverse();
                b.push(Move::Simplex { pos: *pos, tuple: omega_tuple, forward: true });
            }
        }
    }
    b.commute_sort_to(&end.letters);
    let trace = ProofTrace { start, moves: b.moves, end };
    trace.replay()?;
    Ok(trace)
}

/// The maps from words to `T_N`: `sharp` on `B(2,N)` sends `R_ab` to the
/// product `<ab>`, `star` and `starstar` on `B(3,N+1)` send `R_abc` to
/// `<abc>` and `<a,c+a-b,c>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordHom {
    Sharp,
    Star,
    StarStar,
}

/// Image of a whole word: the ordered product of its letter images,
/// truncated at degree `d`.
pub fn word_image(w: &Word, hom: WordHom, d: u32) -> Result<NcPoly> {
    let alg = match hom {
        WordHom::Sharp => {
            if w.n != 2 {
                return Err(Error::InvalidArgument(format!(
                    "sharp needs a B(2,N) word, got n = {}",
                    w.n
                )));
            }
            Algebra::new(w.bound)?
        }
        WordHom::Star | WordHom::StarStar => {
            if w.n != 3 {
                return Err(Error::InvalidArgument(format!(
                    "star maps need a B(3,N+1) word, got n = {}",
                    w.n
                )));
            }
            Algebra::new(w.bound - 1)?
        }
    };
    let mut out = NcPoly::one(&alg, d);
    for l in w.letters() {
        let factor = match hom {
            WordHom::Sharp => e_ab(l.indices()[0], l.indices()[1], &alg, d)?,
            WordHom::Star => {
                let (a, b, c) = (l.indices()[0], l.indices()[1], l.indices()[2]);
                e_lambda(Lambda::new(a, b, c, alg.n())?, &alg, d)?
            }
            WordHom::StarStar => {
                let (a, b, c) = (l.indices()[0], l.indices()[1], l.indices()[2]);
                e_lambda(Lambda::new(a, c + a - b, c, alg.n())?, &alg, d)?
            }
        };
        out = out.mul(&factor, &alg)?;
    }
    Ok(out)
}

/// Outcome of the strong (letter-for-letter) comparison of two
/// quantum-exponential factor lists plus the truncated series check.
#[derive(Clone, Debug)]
pub struct StrongEqualityReport {
    pub name: String,
    pub strong_equal: bool,
    pub series: IdentityReport,
}

/// `mu_2` applied to the `star` image of a `B(3,N)` word, as the list of
/// quantum-exponential arguments `(q-power, monomial)` it produces:
/// factors reversed, each argument mapped through `mu_2` of `T_{N-1}`.
fn mu2_factor_args(w: &Word, alg: &Algebra) -> Vec<(i64, Monomial)> {
    let mu2 = VertexMap::new(MapKind::Mu2, alg.n());
    w.letters()
        .iter()
        .rev()
        .map(|l| {
            let (a, b, c) = (l.indices()[0], l.indices()[1], l.indices()[2]);
            let lambda = Lambda { a, b, c };
            let mut seq: Vec<(Vertex, u32)> = lambda
                .factor_sequence()
                .into_iter()
                .map(|(v, e)| (mu2.apply(v), e))
                .collect();
            seq.reverse();
            normal_order(&seq, alg)
        })
        .collect()
}

/// The `starstar` argument list of a `B(3,N)` word.
fn starstar_factor_args(w: &Word, alg: &Algebra) -> Vec<(i64, Monomial)> {
    w.letters()
        .iter()
        .map(|l| {
            let (a, b, c) = (l.indices()[0], l.indices()[1], l.indices()[2]);
            let lambda = Lambda { a, b: c + a - b, c };
            normal_order(&lambda.factor_sequence(), alg)
        })
        .collect()
}

fn product_of_args(args: &[(i64, Monomial)], alg: &Algebra, d: u32) -> Result<NcPoly> {
    let mut out = NcPoly::one(alg, d);
    for (e, m) in args {
        let mut arg = NcPoly::zero(alg.n(), d);
        arg.add_term(m.clone(), RationalFunction::q_power(*e));
        out = out.mul(&qexp(&arg, alg, d)?, alg)?;
    }
    Ok(out)
}

/// The strong equalities `mu_2((W(3,N))*) = (W'(3,N))**` and
/// `mu_2((W'(3,N))*) = (W(3,N))**`, checked letter-for-letter on the
/// factor lists and as truncated series in `T_{N-1}`.
pub fn verify_lemma8(big_n: u8, d: u32) -> Result<Vec<StrongEqualityReport>> {
    if big_n < 3 {
        return Err(Error::InvalidArgument(format!(
            "the mu_2 factor-list identity needs N >= 3, got {big_n}"
        )));
    }
    let alg = Algebra::new(big_n - 1)?;
    let w_lex = word_w(3, big_n, WordOrder::Lex)?;
    let w_colex = word_w(3, big_n, WordOrder::Colex)?;
    let mut out = Vec::new();
    for (name, mu_side, star_side) in [
        ("mu2(W*) = W'**", &w_lex, &w_colex),
        ("mu2(W'*) = W**", &w_colex, &w_lex),
    ] {
        let lhs_args = mu2_factor_args(mu_side, &alg);
        let rhs_args = starstar_factor_args(star_side, &alg);
        let strong_equal = lhs_args == rhs_args;
        let lhs = product_of_args(&lhs_args, &alg, d)?;
        let rhs = product_of_args(&rhs_args, &alg, d)?;
        out.push(StrongEqualityReport {
            name: name.into(),
            strong_equal,
            series: verify_identity(&lhs, &rhs, &alg),
        });
    }
    Ok(out)
}
