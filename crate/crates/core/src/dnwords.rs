//! Word groups over a commutation graph: generators `(label, slot)` square
//! to the identity, and two generators commute exactly when their labels are
//! orthogonal and their slots differ.  On top of the canonical normal form
//! this module builds the partial compositions, the parity map to sign
//! vectors, the operad structure on pairs (word, permutation), and the
//! action on a finite loop-group model.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::hyper::{SignVector, SignedPerm};
use crate::perm::{perm_compose_i, Permutation};
use crate::report::Report;

/// A finite label set with a symmetric irreflexive orthogonality relation,
/// plus the number of slots words may touch.  Zero slots gives the trivial
/// group (only the empty word exists).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CommutationContext {
    labels: Vec<String>,
    perp: BTreeSet<(usize, usize)>,
    slots: usize,
}

impl CommutationContext {
    pub fn new(labels: &[&str], perp: &[(&str, &str)], slots: usize) -> Result<Arc<Self>, Error> {
        let mut sorted: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::argument("duplicate label names"));
        }
        let mut ctx = CommutationContext {
            labels: sorted,
            perp: BTreeSet::new(),
            slots,
        };
        for (a, b) in perp {
            let ia = ctx
                .label_index(a)
                .ok_or_else(|| Error::argument("perp label not in label set"))?;
            let ib = ctx
                .label_index(b)
                .ok_or_else(|| Error::argument("perp label not in label set"))?;
            if ia == ib {
                return Err(Error::argument("a label cannot be orthogonal to itself"));
            }
            ctx.perp.insert((ia.min(ib), ia.max(ib)));
        }
        Ok(Arc::new(ctx))
    }

    /// Parse the text format: lines `labels=a,b,c`, `perp=a-b,b-c`, `slots=2`.
    pub fn parse(text: &str) -> Result<Arc<Self>, Error> {
        let mut labels: Vec<String> = Vec::new();
        let mut perp: Vec<(String, String)> = Vec::new();
        let mut slots = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            match line.split_once('=') {
                Some(("labels", v)) => {
                    labels = v.split(',').map(|s| s.trim().to_string()).collect();
                }
                Some(("perp", v)) => {
                    for pair in v.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                        let (a, b) = pair
                            .split_once('-')
                            .ok_or_else(|| Error::parse("perp pair needs the form a-b"))?;
                        perp.push((a.trim().to_string(), b.trim().to_string()));
                    }
                }
                Some(("slots", v)) => {
                    slots = Some(
                        v.trim()
                            .parse()
                            .map_err(|_| Error::parse("slots is not an integer"))?,
                    );
                }
                _ => return Err(Error::parse(&format!("unrecognized line `{line}`"))),
            }
        }
        let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let perp_refs: Vec<(&str, &str)> =
            perp.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        CommutationContext::new(
            &label_refs,
            &perp_refs,
            slots.ok_or_else(|| Error::parse("missing slots line"))?,
        )
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(name)).ok()
    }

    pub fn label_name(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn perp_by_index(&self, a: usize, b: usize) -> bool {
        a != b && self.perp.contains(&(a.min(b), a.max(b)))
    }

    /// Same labels and orthogonality, different slot count.
    pub fn with_slots(self: &Arc<Self>, slots: usize) -> Arc<Self> {
        Arc::new(CommutationContext {
            labels: self.labels.clone(),
            perp: self.perp.clone(),
            slots,
        })
    }

    /// Disjoint union of label sets; every label of one side is orthogonal
    /// to every label of the other.  Label names must not collide.
    pub fn union(&self, other: &CommutationContext, slots: usize) -> Result<Arc<Self>, Error> {
        let mut labels: Vec<String> = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::argument("label sets are not disjoint"));
            }
        }
        let find = |name: &str| labels.binary_search_by(|l| l.as_str().cmp(name)).unwrap();
        let mut perp = BTreeSet::new();
        for &(a, b) in &self.perp {
            let (x, y) = (find(&self.labels[a]), find(&self.labels[b]));
            perp.insert((x.min(y), x.max(y)));
        }
        for &(a, b) in &other.perp {
            let (x, y) = (find(&other.labels[a]), find(&other.labels[b]));
            perp.insert((x.min(y), x.max(y)));
        }
        for a in &self.labels {
            for b in &other.labels {
                let (x, y) = (find(a), find(b));
                perp.insert((x.min(y), x.max(y)));
            }
        }
        Ok(Arc::new(CommutationContext { labels, perp, slots }))
    }

    /// Whether every label of `sub` occurs here (by name).
    pub fn contains_labels(&self, sub: &CommutationContext) -> bool {
        sub.labels.iter().all(|l| self.label_index(l).is_some())
    }
}

/// One generator occurrence: a label index and a slot in 1..=slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub label: usize,
    pub slot: usize,
}

fn commutes(ctx: &CommutationContext, a: Letter, b: Letter) -> bool {
    a.slot != b.slot && ctx.perp_by_index(a.label, b.label)
}

/// A group element in canonical reduced form: the lexicographically least
/// word (letters ordered by label index, then slot) among all shuffle
/// equivalent reduced representatives.
#[derive(Clone, PartialEq, Eq)]
pub struct DnWord {
    ctx: Arc<CommutationContext>,
    letters: Vec<Letter>,
}

impl DnWord {
    pub fn identity(ctx: &Arc<CommutationContext>) -> DnWord {
        DnWord {
            ctx: ctx.clone(),
            letters: Vec::new(),
        }
    }

    /// Normalize a raw letter sequence.
    pub fn new(ctx: &Arc<CommutationContext>, raw: &[Letter]) -> Result<DnWord, Error> {
        for l in raw {
            if l.label >= ctx.labels.len() {
                return Err(Error::argument("letter label outside the context"));
            }
            if l.slot == 0 || l.slot > ctx.slots {
                return Err(Error::argument("letter slot outside the context"));
            }
        }
        let mut letters = Vec::with_capacity(raw.len());
        for &l in raw {
            push_letter(ctx, &mut letters, l);
        }
        Ok(DnWord {
            ctx: ctx.clone(),
            letters,
        })
    }

    /// Build from (label name, slot) pairs.
    pub fn from_names(
        ctx: &Arc<CommutationContext>,
        pairs: &[(&str, usize)],
    ) -> Result<DnWord, Error> {
        let raw: Result<Vec<Letter>, Error> = pairs
            .iter()
            .map(|(name, slot)| {
                Ok(Letter {
                    label: ctx
                        .label_index(name)
                        .ok_or_else(|| Error::argument("unknown label name"))?,
                    slot: *slot,
                })
            })
            .collect();
        DnWord::new(ctx, &raw?)
    }

    pub fn ctx(&self) -> &Arc<CommutationContext> {
        &self.ctx
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn slots(&self) -> usize {
        self.ctx.slots
    }

    /// Group product: concatenate, then normalize.
    pub fn mul(&self, other: &DnWord) -> Result<DnWord, Error> {
        if self.ctx != other.ctx {
            return Err(Error::argument("context mismatch in word product"));
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_letter(&self.ctx, &mut letters, l);
        }
        Ok(DnWord {
            ctx: self.ctx.clone(),
            letters,
        })
    }

    /// Inverse: every generator is an involution, so reverse the word.
    pub fn inverse(&self) -> DnWord {
        let raw: Vec<Letter> = self.letters.iter().rev().copied().collect();
        DnWord::new(&self.ctx, &raw).expect("letters stay in context")
    }

    /// Slot-wise parity of letter counts; a group homomorphism onto sign
    /// vectors of length `slots`.
    pub fn parity(&self) -> SignVector {
        let mut signs = vec![1i8; self.ctx.slots];
        for l in &self.letters {
            signs[l.slot - 1] = -signs[l.slot - 1];
        }
        SignVector::new(signs).expect("parities are signs")
    }

    /// Parity at one slot (1-indexed).
    pub fn parity_at(&self, slot: usize) -> i8 {
        let mut s = 1i8;
        for l in &self.letters {
            if l.slot == slot {
                s = -s;
            }
        }
        s
    }
}

impl fmt::Debug for DnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "({},{})", self.ctx.label_name(l.label), l.slot)?;
        }
        Ok(())
    }
}

impl PartialOrd for DnWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DnWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&*self.ctx, &self.letters).cmp(&(&*other.ctx, &other.letters))
    }
}

/// Insert one letter on the right of a canonical word, keeping it canonical:
/// the letter cancels the rightmost equal letter it can commute back to,
/// else is placed at the lexicographically least admissible position.
fn push_letter(ctx: &CommutationContext, word: &mut Vec<Letter>, l: Letter) {
    let mut barrier = 0usize;
    let mut u = word.len();
    while u > 0 {
        let w = word[u - 1];
        if w == l {
            word.remove(u - 1);
            return;
        }
        if !commutes(ctx, w, l) {
            barrier = u;
            break;
        }
        u -= 1;
    }
    let mut pos = word.len();
    for v in barrier..word.len() {
        if word[v] > l {
            pos = v;
            break;
        }
    }
    word.insert(pos, l);
}

/// The slot reindexing homomorphism into a composite context: letters of a
/// word over k slots move to slots r+i-1 of the union context.
pub fn shift_embed(y: &DnWord, i: usize, left: &CommutationContext) -> Result<DnWord, Error> {
    let j = left.slots();
    let k = y.slots();
    if i == 0 || i > j {
        return Err(Error::argument("embedding index out of range"));
    }
    let target = left.union(y.ctx(), j + k - 1)?;
    shift_embed_into(y, i, &target)
}

/// As [`shift_embed`], but into an already-built union context.
pub fn shift_embed_into(
    y: &DnWord,
    i: usize,
    target: &Arc<CommutationContext>,
) -> Result<DnWord, Error> {
    let raw: Result<Vec<Letter>, Error> = y
        .letters
        .iter()
        .map(|l| {
            Ok(Letter {
                label: target
                    .label_index(y.ctx.label_name(l.label))
                    .ok_or_else(|| Error::argument("target context misses a label"))?,
                slot: l.slot + i - 1,
            })
        })
        .collect();
    DnWord::new(target, &raw?)
}

/// The involutive slot reflection: slots in [i, k+i) map to k+2i-r-1, all
/// others stay fixed.  An empty window (k = 0) is the identity.
pub fn bar_automorphism(z: &DnWord, i: usize, k: usize) -> Result<DnWord, Error> {
    if k == 0 {
        return Ok(z.clone());
    }
    if i == 0 || i + k - 1 > z.slots() {
        return Err(Error::invariant("reflection window outside the slot range"));
    }
    let raw: Vec<Letter> = z
        .letters
        .iter()
        .map(|l| {
            if l.slot >= i && l.slot < k + i {
                Letter {
                    label: l.label,
                    slot: k + 2 * i - l.slot - 1,
                }
            } else {
                *l
            }
        })
        .collect();
    DnWord::new(&z.ctx, &raw)
}

type BarFn = fn(&DnWord, usize, usize) -> Result<DnWord, Error>;

/// Left action of a word over j slots on a word over j+k-1 slots, extended
/// letterwise from the generator cases.
pub fn vdash_action(x: &DnWord, z: &DnWord, i: usize, k: usize) -> Result<DnWord, Error> {
    vdash_action_with(bar_automorphism, x, z, i, k)
}

fn vdash_action_with(
    bar: BarFn,
    x: &DnWord,
    z: &DnWord,
    i: usize,
    k: usize,
) -> Result<DnWord, Error> {
    let j = x.slots();
    if z.slots() != j + k - 1 {
        return Err(Error::argument("slot counts do not match j+k-1"));
    }
    if i == 0 || i > j {
        return Err(Error::argument("action index out of range"));
    }
    if !z.ctx().contains_labels(x.ctx()) {
        return Err(Error::argument("target context misses labels of the actor"));
    }
    let mut acc = z.clone();
    for l in x.letters.iter().rev() {
        let label = z
            .ctx()
            .label_index(x.ctx.label_name(l.label))
            .expect("checked above");
        if l.slot < i {
            let head = DnWord::new(z.ctx(), &[Letter { label, slot: l.slot }])?;
            acc = head.mul(&acc)?;
        } else if l.slot == i {
            // the run over the window, innermost (rightmost) letter at slot
            // i+k-1; this orientation is forced by the algebra action
            let raw: Vec<Letter> = (i..i + k).map(|s| Letter { label, slot: s }).collect();
            let head = DnWord::new(z.ctx(), &raw)?;
            acc = head.mul(&bar(&acc, i, k)?)?;
        } else {
            let head = DnWord::new(
                z.ctx(),
                &[Letter {
                    label,
                    slot: l.slot + k - 1,
                }],
            )?;
            acc = head.mul(&acc)?;
        }
    }
    Ok(acc)
}

/// Partial composition of words: `x o_i y = x |- c_i(y)`.
pub fn dn_circ_i(x: &DnWord, y: &DnWord, i: usize) -> Result<DnWord, Error> {
    dn_circ_i_with(bar_automorphism, x, y, i)
}

fn dn_circ_i_with(bar: BarFn, x: &DnWord, y: &DnWord, i: usize) -> Result<DnWord, Error> {
    let k = y.slots();
    let embedded = shift_embed(y, i, x.ctx())?;
    vdash_action_with(bar, x, &embedded, i, k)
}

/// An operad element: a word together with a permutation of its slots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DnOperadElement {
    pub word: DnWord,
    pub perm: Permutation,
}

impl fmt::Debug for DnOperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.word, self.perm)
    }
}

impl DnOperadElement {
    pub fn new(word: DnWord, perm: Permutation) -> Result<Self, Error> {
        if word.slots() != perm.degree() {
            return Err(Error::invariant("permutation degree must equal slot count"));
        }
        Ok(DnOperadElement { word, perm })
    }

    pub fn identity(ctx: &Arc<CommutationContext>) -> Self {
        DnOperadElement {
            word: DnWord::identity(ctx),
            perm: Permutation::identity(ctx.slots()),
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    /// Right action of a permutation.
    pub fn act(&self, sigma: &Permutation) -> DnOperadElement {
        DnOperadElement {
            word: self.word.clone(),
            perm: self.perm.compose(sigma),
        }
    }

    /// The operad morphism to signed permutations: (parity(x), rho).
    pub fn to_hyperoctahedral(&self) -> SignedPerm {
        SignedPerm::new(self.word.parity(), self.perm.clone()).expect("degrees agree")
    }
}

/// Composition on pairs:
/// `(x,rho) o_i (y,ups) = (x o_{rho(i)} y, rho o_i (tau_k(p_{rho(i)}(x)) ups))`.
pub fn dn_pair_circ_i(
    a: &DnOperadElement,
    b: &DnOperadElement,
    i: usize,
) -> Result<DnOperadElement, Error> {
    dn_pair_circ_i_with(bar_automorphism, a, b, i)
}

fn dn_pair_circ_i_with(
    bar: BarFn,
    a: &DnOperadElement,
    b: &DnOperadElement,
    i: usize,
) -> Result<DnOperadElement, Error> {
    let j = a.degree();
    let k = b.degree();
    if i == 0 || i > j {
        return Err(Error::argument("composition index out of range"));
    }
    let pivot = a.perm.apply(i);
    let word = dn_circ_i_with(bar, &a.word, &b.word, pivot)?;
    let twisted = if a.word.parity_at(pivot) == 1 {
        b.perm.clone()
    } else {
        Permutation::reversal(k).compose(&b.perm)
    };
    let perm = perm_compose_i(&a.perm, &twisted, i)?;
    DnOperadElement::new(word, perm)
}

/// The word-group operad packaged behind the generic operad interface.
/// Levels are infinite (labels are free), so enumeration is refused; the
/// unit levels carry empty label sets.
#[derive(Debug, Clone, Default)]
pub struct DnOperad;

impl crate::operad::Operad for DnOperad {
    type Elem = DnOperadElement;

    fn name(&self) -> &str {
        "Dn"
    }
    fn level_of(&self, e: &DnOperadElement) -> usize {
        e.degree()
    }
    fn unit1(&self) -> DnOperadElement {
        DnOperadElement::identity(&CommutationContext::new(&[], &[], 1).expect("valid"))
    }
    fn unit0(&self) -> DnOperadElement {
        DnOperadElement::identity(&CommutationContext::new(&[], &[], 0).expect("valid"))
    }
    fn compose(
        &self,
        a: &DnOperadElement,
        i: usize,
        b: &DnOperadElement,
    ) -> Result<DnOperadElement, Error> {
        dn_pair_circ_i(a, b, i)
    }
    fn act(&self, a: &DnOperadElement, sigma: &Permutation) -> DnOperadElement {
        a.act(sigma)
    }
    fn enumerate_level(&self, _j: usize) -> Option<Vec<DnOperadElement>> {
        None
    }
    fn sigma_action_free(&self, _j: usize) -> bool {
        true
    }
    fn canonical_pair<V: Clone + Ord>(
        &self,
        op: DnOperadElement,
        args: Vec<V>,
    ) -> (DnOperadElement, Vec<V>) {
        let sigma = op.perm.inverse();
        let new_op = op.act(&sigma);
        let new_args: Vec<V> = (1..=args.len())
            .map(|t| args[sigma.apply(t) - 1].clone())
            .collect();
        (new_op, new_args)
    }
}

/// A finite group together with an interpretation of every label as an
/// anti-homomorphism into permutations of a finite set; orthogonal labels
/// must commute pointwise.
pub struct LoopModel {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    vhat: usize,
    interp: std::collections::BTreeMap<String, Vec<Vec<usize>>>,
}

impl LoopModel {
    pub fn new(
        mul: Vec<Vec<usize>>,
        vhat: usize,
        interp: std::collections::BTreeMap<String, Vec<Vec<usize>>>,
    ) -> Result<Self, Error> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n) {
            return Err(Error::invariant("group table is not square"));
        }
        for x in 0..n {
            if mul[0][x] != x || mul[x][0] != x {
                return Err(Error::invariant("group identity must be element 0"));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                if mul[x][y] == 0 {
                    inv[x] = y;
                }
            }
        }
        if inv.iter().any(|&x| x == usize::MAX) {
            return Err(Error::invariant("group table lacks inverses"));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return Err(Error::invariant("group table is not associative"));
                    }
                }
            }
        }
        let model = LoopModel {
            mul,
            inv,
            vhat,
            interp,
        };
        for (name, table) in &model.interp {
            if table.len() != n {
                return Err(Error::invariant("interpretation misses group elements"));
            }
            for perm in table {
                if perm.len() != vhat {
                    return Err(Error::invariant("interpretation has wrong degree"));
                }
                let mut seen = vec![false; vhat];
                for &v in perm {
                    if v >= vhat || seen[v] {
                        return Err(Error::invariant("interpretation is not a permutation"));
                    }
                    seen[v] = true;
                }
            }
            for g in 0..n {
                for h in 0..n {
                    let gh = model.mul[g][h];
                    for v in 0..vhat {
                        // anti-homomorphism: phi*(g h) = phi*(h) o phi*(g)
                        if table[gh][v] != table[h][table[g][v]] {
                            return Err(Error::invariant(&format!(
                                "interpretation of {name} is not an anti-homomorphism"
                            )));
                        }
                    }
                }
            }
        }
        Ok(model)
    }

    pub fn group_size(&self) -> usize {
        self.mul.len()
    }

    pub fn vhat_size(&self) -> usize {
        self.vhat
    }

    pub fn group_mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn group_inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn apply(&self, label: &str, g: usize, v: usize) -> usize {
        self.interp[label][g][v]
    }

    /// Check that every label of a context is interpreted and that
    /// orthogonal labels commute.
    pub fn validate_for(&self, ctx: &CommutationContext) -> Result<(), Error> {
        for label in ctx.labels() {
            if !self.interp.contains_key(label) {
                return Err(Error::precondition(&format!(
                    "model lacks an interpretation for label {label}"
                )));
            }
        }
        let n = self.group_size();
        for a in 0..ctx.labels().len() {
            for b in (a + 1)..ctx.labels().len() {
                if !ctx.perp_by_index(a, b) {
                    continue;
                }
                let ta = &self.interp[&ctx.labels()[a]];
                let tb = &self.interp[&ctx.labels()[b]];
                for g in 0..n {
                    for h in 0..n {
                        for v in 0..self.vhat {
                            if ta[g][tb[h][v]] != tb[h][ta[g][v]] {
                                return Err(Error::precondition(&format!(
                                    "orthogonal labels {} and {} do not commute",
                                    ctx.labels()[a],
                                    ctx.labels()[b]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn s3_tables() -> Vec<Vec<usize>> {
        // S3 elements: 0=e, 1=(12), 2=(13), 3=(23), 4=(123), 5=(132)
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let compose = |a: [usize; 3], b: [usize; 3]| {
            let mut c = [0usize; 3];
            for (i, ci) in c.iter_mut().enumerate() {
                *ci = a[b[i]];
            }
            c
        };
        let mut mul = vec![vec![0usize; 6]; 6];
        for (i, &p) in perms.iter().enumerate() {
            for (j, &q) in perms.iter().enumerate() {
                let pq = compose(p, q);
                mul[i][j] = perms.iter().position(|&r| r == pq).unwrap();
            }
        }
        mul
    }

    /// Model with group S3 where every label flips its own two-point block
    /// by the sign of the group element.  Orthogonal labels get disjoint
    /// blocks by greedy coloring.
    pub fn s3_model(ctx: &CommutationContext) -> Result<LoopModel, Error> {
        let mul = Self::s3_tables();
        let inv_of = |g: usize| (0..6).find(|&h| mul[g][h] == 0).unwrap();
        let labels = ctx.labels();
        let mut block = vec![0usize; labels.len()];
        let mut max_block = 0usize;
        for a in 0..labels.len() {
            let mut used = BTreeSet::new();
            for b in 0..a {
                if ctx.perp_by_index(a, b) {
                    used.insert(block[b]);
                }
            }
            let mut c = 0;
            while used.contains(&c) {
                c += 1;
            }
            block[a] = c;
            max_block = max_block.max(c + 1);
        }
        let vhat = 2 * max_block;
        let is_odd = |g: usize| matches!(g, 1 | 2 | 3);
        let mut interp = std::collections::BTreeMap::new();
        for (idx, name) in labels.iter().enumerate() {
            let c = block[idx];
            let mut table = Vec::with_capacity(6);
            for g in 0..6 {
                let mut p: Vec<usize> = (0..vhat).collect();
                if is_odd(inv_of(g)) {
                    p.swap(2 * c, 2 * c + 1);
                }
                table.push(p);
            }
            interp.insert(name.clone(), table);
        }
        LoopModel::new(mul, vhat, interp)
    }

    /// As [`LoopModel::s3_model`] plus a shared six-point coordinate where
    /// one non-orthogonal label pair acts by right translation resp. twisted
    /// conjugation; this makes ordering mistakes visible.
    pub fn s3_rich_model(ctx: &CommutationContext) -> Result<LoopModel, Error> {
        let base = LoopModel::s3_model(ctx)?;
        let labels = ctx.labels();
        let mut shared: Option<(usize, usize)> = None;
        'outer: for a in 0..labels.len() {
            for b in (a + 1)..labels.len() {
                if !ctx.perp_by_index(a, b) {
                    shared = Some((a, b));
                    break 'outer;
                }
            }
        }
        let extra = 6usize;
        let vhat = base.vhat + extra;
        let mut interp = std::collections::BTreeMap::new();
        for (idx, name) in labels.iter().enumerate() {
            let old = &base.interp[name];
            let mut table = Vec::with_capacity(6);
            for g in 0..6 {
                let mut p: Vec<usize> = (0..vhat).collect();
                p[..base.vhat].copy_from_slice(&old[g]);
                match shared {
                    Some((a, _)) if a == idx => {
                        // right translation x -> x g, an anti-homomorphism in g
                        for x in 0..extra {
                            p[base.vhat + x] = base.vhat + base.mul[x][g];
                        }
                    }
                    Some((_, b)) if b == idx => {
                        // conjugation x -> g^{-1} x g, an anti-homomorphism in g
                        for x in 0..extra {
                            p[base.vhat + x] =
                                base.vhat + base.mul[base.mul[base.inv[g]][x]][g];
                        }
                    }
                    _ => {}
                }
                table.push(p);
            }
            interp.insert(name.clone(), table);
        }
        LoopModel::new(base.mul.clone(), vhat, interp)
    }
}

/// Evaluate the algebra action of (word, perm) on a point of the model:
/// permute the group arguments, act letter by letter from the right (each
/// letter transports the point along its slot's current loop and then
/// reverses that loop), and return the product of the loops together with
/// the transformed point.
pub fn dn_algebra_action(
    a: &DnOperadElement,
    v: usize,
    gs: &[usize],
    model: &LoopModel,
) -> Result<(usize, usize), Error> {
    let j = a.degree();
    if gs.len() != j {
        return Err(Error::argument("arity mismatch in algebra action"));
    }
    if v >= model.vhat {
        return Err(Error::argument("point outside the model set"));
    }
    model.validate_for(a.word.ctx())?;
    Ok(dn_algebra_action_unchecked(a, v, gs, model))
}

fn dn_algebra_action_unchecked(
    a: &DnOperadElement,
    v: usize,
    gs: &[usize],
    model: &LoopModel,
) -> (usize, usize) {
    let j = a.degree();
    let inv_perm = a.perm.inverse();
    let mut loops: Vec<usize> = (1..=j).map(|t| gs[inv_perm.apply(t) - 1]).collect();
    let mut point = v;
    for l in a.word.letters().iter().rev() {
        let name = a.word.ctx().label_name(l.label);
        point = model.apply(name, loops[l.slot - 1], point);
        loops[l.slot - 1] = model.group_inv(loops[l.slot - 1]);
    }
    let product = loops.iter().fold(0usize, |acc, &g| model.group_mul(acc, g));
    (product, point)
}

/// The same action computed through the closed formula: the loop product of
/// the parity-adjusted permuted entries, and label transformations raised to
/// the parity of the trailing subword.  Oracle for [`dn_algebra_action`].
pub fn dn_algebra_action_formula(
    a: &DnOperadElement,
    v: usize,
    gs: &[usize],
    model: &LoopModel,
) -> Result<(usize, usize), Error> {
    let j = a.degree();
    if gs.len() != j {
        return Err(Error::argument("arity mismatch in algebra action"));
    }
    let inv_perm = a.perm.inverse();
    let parity = a.word.parity();
    let mut product = 0usize;
    for t in 1..=j {
        let g = gs[inv_perm.apply(t) - 1];
        let delta = if parity.get(t) == 1 { g } else { model.group_inv(g) };
        product = model.group_mul(product, delta);
    }
    let letters = a.word.letters();
    let mut point = v;
    // function composition: the rightmost factor acts first
    for (t, l) in letters.iter().enumerate().rev() {
        let mut eps = 1i8;
        for l2 in &letters[t + 1..] {
            if l2.slot == l.slot {
                eps = -eps;
            }
        }
        let mut g = gs[inv_perm.apply(l.slot) - 1];
        if eps == -1 {
            g = model.group_inv(g);
        }
        point = model.apply(a.word.ctx().label_name(l.label), g, point);
    }
    Ok((product, point))
}

pub fn random_word(
    ctx: &Arc<CommutationContext>,
    rng: &mut ChaCha8Rng,
    max_len: usize,
) -> DnWord {
    let len = rng.gen_range(0..=max_len);
    let raw: Vec<Letter> = (0..len)
        .map(|_| Letter {
            label: rng.gen_range(0..ctx.labels().len()),
            slot: rng.gen_range(1..=ctx.slots()),
        })
        .collect();
    DnWord::new(ctx, &raw).expect("random letters are in context")
}

pub fn random_elem(
    ctx: &Arc<CommutationContext>,
    rng: &mut ChaCha8Rng,
    max_len: usize,
) -> DnOperadElement {
    let word = random_word(ctx, rng, max_len);
    let perms = Permutation::enumerate(ctx.slots());
    let perm = perms[rng.gen_range(0..perms.len())].clone();
    DnOperadElement::new(word, perm).expect("degrees agree")
}

fn default_ctx(prefix: &str, slots: usize) -> Arc<CommutationContext> {
    let a = format!("{prefix}a");
    let b = format!("{prefix}b");
    let c = format!("{prefix}c");
    CommutationContext::new(
        &[a.as_str(), b.as_str(), c.as_str()],
        &[(a.as_str(), b.as_str())],
        slots,
    )
    .expect("default context is valid")
}

/// A broken slot reflection used as a negative control: it reflects around
/// the wrong pivot whenever the window is wide enough.
pub fn corrupted_bar(z: &DnWord, i: usize, k: usize) -> Result<DnWord, Error> {
    if k >= 2 {
        let raw: Vec<Letter> = z
            .letters()
            .iter()
            .map(|l| {
                if l.slot >= i && l.slot < k + i - 1 {
                    Letter {
                        label: l.label,
                        slot: k + 2 * i - l.slot - 2,
                    }
                } else {
                    *l
                }
            })
            .collect();
        return DnWord::new(z.ctx(), &raw);
    }
    bar_automorphism(z, i, k)
}

/// Randomized verification of the eleven composition formulas, the parity
/// interaction, associativity, equivariance, the morphism to signed
/// permutations and the algebra action axiom; the seed makes reruns
/// reproducible.  `bar` substitutes the slot reflection (pass
/// [`bar_automorphism`] for the honest run).
pub fn verify_dn_suite(samples: usize, seed: u64, bar: BarFn) -> Report {
    let mut report = Report::new("dn-words")
        .with_param("samples", samples)
        .with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let max_len = 8usize;
    for case in 0..samples {
        let j = 1 + (case % 3);
        let k = 1 + ((case / 3) % 3);
        let l = 1 + ((case / 9) % 3);
        let ctx_x = default_ctx("x", j);
        let ctx_y = default_ctx("y", k);
        let ctx_z = default_ctx("z", l);
        let x = random_word(&ctx_x, &mut rng, max_len);
        let y = random_word(&ctx_y, &mut rng, max_len);
        let z = random_word(&ctx_z, &mut rng, max_len);
        let i = rng.gen_range(1..=j);

        check_circ_formulas(&mut report, bar, &x, &y, i, k, &mut rng);
        check_parity_circ(&mut report, bar, &x, &y, i, k);
        check_word_associativity(&mut report, bar, &x, &y, &z, i, &mut rng);

        let a = random_elem(&ctx_x, &mut rng, max_len);
        let b = random_elem(&ctx_y, &mut rng, max_len);
        let c = random_elem(&ctx_z, &mut rng, max_len);
        check_pair_associativity(&mut report, bar, &a, &b, &c, i);
        check_pair_equivariance(&mut report, bar, &a, &b, i, &mut rng);
        check_morphism_to_hyper(&mut report, bar, &a, &b, i);
    }
    check_algebra_action(&mut report, samples, seed ^ 0x9e3779b97f4a7c15);
    report
}

fn check_circ_formulas(
    report: &mut Report,
    bar: BarFn,
    x: &DnWord,
    y: &DnWord,
    i: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) {
    let ctx_x = x.ctx();
    let one_y = DnWord::identity(y.ctx());
    let circ = |a: &DnWord, b: &DnWord, s: usize| dn_circ_i_with(bar, a, b, s).unwrap();

    // i) 1 o_i 1 = 1
    let one_x = DnWord::identity(ctx_x);
    let r = circ(&one_x, &one_y, i);
    report.record("circ/i", r.is_empty(), (!r.is_empty()).then(|| format!("{r:?}")));

    // ii)/iii) x |- z = (x o_i 1) z, with the reflection when p_i(x) = -1
    let target = ctx_x.union(y.ctx(), x.slots() + k - 1).unwrap();
    let z = random_word(&target, rng, 6);
    let lhs = vdash_action_with(bar, x, &z, i, k).unwrap();
    let xc1 = circ(x, &one_y, i);
    let rhs = if x.parity_at(i) == 1 {
        xc1.mul(&z).unwrap()
    } else {
        xc1.mul(&bar(&z, i, k).unwrap()).unwrap()
    };
    report.record(
        "circ/ii-iii",
        lhs == rhs,
        (lhs != rhs).then(|| format!("x={x:?} z={z:?} i={i} lhs={lhs:?} rhs={rhs:?}")),
    );

    // iv)-vii): appending a generator to x, composing with the unit
    let label = rng.gen_range(0..ctx_x.labels().len());
    for r_slot in 1..=x.slots() {
        let gen_word = DnWord::new(ctx_x, &[Letter { label, slot: r_slot }]).unwrap();
        let xg = x.mul(&gen_word).unwrap();
        let lhs = circ(&xg, &one_y, i);
        let name = ctx_x.label_name(label);
        let rhs = if r_slot < i {
            circ(x, &one_y, i)
                .mul(&DnWord::from_names(&target, &[(name, r_slot)]).unwrap())
                .unwrap()
        } else if r_slot == i {
            let tail: Vec<(&str, usize)> = if x.parity_at(i) == 1 {
                (i..i + k).map(|s| (name, s)).collect()
            } else {
                (i..i + k).rev().map(|s| (name, s)).collect()
            };
            circ(x, &one_y, i)
                .mul(&DnWord::from_names(&target, &tail).unwrap())
                .unwrap()
        } else {
            circ(x, &one_y, i)
                .mul(&DnWord::from_names(&target, &[(name, r_slot + k - 1)]).unwrap())
                .unwrap()
        };
        report.record(
            "circ/iv-vii",
            lhs == rhs,
            (lhs != rhs).then(|| format!("x={x:?} gen=({name},{r_slot}) i={i} k={k}")),
        );
    }

    // viii)-ix): appending a generator to y
    let label_y = rng.gen_range(0..y.ctx().labels().len());
    let name_y = y.ctx().label_name(label_y).to_string();
    for r_slot in 1..=k {
        let gen_word =
            DnWord::new(y.ctx(), &[Letter { label: label_y, slot: r_slot }]).unwrap();
        let yg = y.mul(&gen_word).unwrap();
        let lhs = circ(x, &yg, i);
        let target_slot = if x.parity_at(i) == 1 {
            r_slot + i - 1
        } else {
            k + i - r_slot
        };
        let rhs = circ(x, y, i)
            .mul(&DnWord::from_names(&target, &[(name_y.as_str(), target_slot)]).unwrap())
            .unwrap();
        report.record(
            "circ/viii-ix",
            lhs == rhs,
            (lhs != rhs).then(|| format!("x={x:?} y={y:?} gen=({name_y},{r_slot}) i={i}")),
        );
    }

    // x)-xi): appending a generator to x away from the pivot slot
    for r_slot in (1..=x.slots()).filter(|&r| r != i) {
        let gen_word = DnWord::new(ctx_x, &[Letter { label, slot: r_slot }]).unwrap();
        let xg = x.mul(&gen_word).unwrap();
        let lhs = circ(&xg, y, i);
        let name = ctx_x.label_name(label);
        let mapped = if r_slot < i { r_slot } else { r_slot + k - 1 };
        let rhs = circ(x, y, i)
            .mul(&DnWord::from_names(&target, &[(name, mapped)]).unwrap())
            .unwrap();
        report.record(
            "circ/x-xi",
            lhs == rhs,
            (lhs != rhs).then(|| format!("x={x:?} y={y:?} gen=({name},{r_slot}) i={i}")),
        );
    }
}

fn check_parity_circ(report: &mut Report, bar: BarFn, x: &DnWord, y: &DnWord, i: usize, k: usize) {
    let composed = dn_circ_i_with(bar, x, y, i).unwrap();
    let p = composed.parity();
    let expect = x.parity().compose_i(&y.parity(), i).unwrap();
    let pass = p == expect;
    report.record(
        "parity/circ",
        pass,
        (!pass).then(|| format!("x={x:?} y={y:?} i={i} k={k} got={p:?} want={expect:?}")),
    );
}

fn check_word_associativity(
    report: &mut Report,
    bar: BarFn,
    x: &DnWord,
    y: &DnWord,
    z: &DnWord,
    i: usize,
    rng: &mut ChaCha8Rng,
) {
    let k = y.slots();
    let l = z.slots();
    let h = rng.gen_range(1..=(x.slots() + k - 1));
    let lhs_inner = dn_circ_i_with(bar, x, y, i).unwrap();
    let lhs = dn_circ_i_with(bar, &lhs_inner, z, h).unwrap();
    let rhs = if h < i {
        let xz = dn_circ_i_with(bar, x, z, h).unwrap();
        dn_circ_i_with(bar, &xz, y, i + l - 1).unwrap()
    } else if h < i + k {
        let hh = if x.parity_at(i) == 1 { h - i + 1 } else { i + k - h };
        let yz = dn_circ_i_with(bar, y, z, hh).unwrap();
        dn_circ_i_with(bar, x, &yz, i).unwrap()
    } else {
        let xz = dn_circ_i_with(bar, x, z, h - k + 1).unwrap();
        dn_circ_i_with(bar, &xz, y, i).unwrap()
    };
    let pass = words_agree(&lhs, &rhs);
    report.record(
        "assoc/words",
        pass,
        (!pass).then(|| format!("x={x:?} y={y:?} z={z:?} i={i} h={h} lhs={lhs:?} rhs={rhs:?}")),
    );
}

/// Compare words over possibly differently-assembled union contexts by
/// resolving letters to (name, slot) pairs.
pub fn words_agree(a: &DnWord, b: &DnWord) -> bool {
    if a.slots() != b.slots() || a.len() != b.len() {
        return false;
    }
    a.letters().iter().zip(b.letters()).all(|(la, lb)| {
        a.ctx().label_name(la.label) == b.ctx().label_name(lb.label) && la.slot == lb.slot
    })
}

fn elems_agree(a: &DnOperadElement, b: &DnOperadElement) -> bool {
    words_agree(&a.word, &b.word) && a.perm == b.perm
}

fn check_pair_associativity(
    report: &mut Report,
    bar: BarFn,
    a: &DnOperadElement,
    b: &DnOperadElement,
    c: &DnOperadElement,
    i: usize,
) {
    let k = b.degree();
    let l = c.degree();
    for h in 1..=(a.degree() + k - 1) {
        let lhs =
            dn_pair_circ_i_with(bar, &dn_pair_circ_i_with(bar, a, b, i).unwrap(), c, h).unwrap();
        let rhs = if h < i {
            dn_pair_circ_i_with(bar, &dn_pair_circ_i_with(bar, a, c, h).unwrap(), b, i + l - 1)
                .unwrap()
        } else if h < i + k {
            dn_pair_circ_i_with(bar, a, &dn_pair_circ_i_with(bar, b, c, h - i + 1).unwrap(), i)
                .unwrap()
        } else {
            dn_pair_circ_i_with(bar, &dn_pair_circ_i_with(bar, a, c, h - k + 1).unwrap(), b, i)
                .unwrap()
        };
        let pass = elems_agree(&lhs, &rhs);
        report.record(
            "assoc/pairs",
            pass,
            (!pass).then(|| format!("a={a:?} b={b:?} c={c:?} i={i} h={h}")),
        );
    }
}

fn check_pair_equivariance(
    report: &mut Report,
    bar: BarFn,
    a: &DnOperadElement,
    b: &DnOperadElement,
    i: usize,
    rng: &mut ChaCha8Rng,
) {
    let j = a.degree();
    let k = b.degree();
    let perms_j = Permutation::enumerate(j);
    let perms_k = Permutation::enumerate(k);
    let rho = perms_j[rng.gen_range(0..perms_j.len())].clone();
    let ups = perms_k[rng.gen_range(0..perms_k.len())].clone();
    let lhs = dn_pair_circ_i_with(bar, &a.act(&rho), &b.act(&ups), i).unwrap();
    let rhs = dn_pair_circ_i_with(bar, a, b, rho.apply(i))
        .unwrap()
        .act(&perm_compose_i(&rho, &ups, i).unwrap());
    let pass = elems_agree(&lhs, &rhs);
    report.record(
        "equivariance/pairs",
        pass,
        (!pass).then(|| format!("a={a:?} b={b:?} rho={rho:?} ups={ups:?} i={i}")),
    );
}

fn check_morphism_to_hyper(
    report: &mut Report,
    bar: BarFn,
    a: &DnOperadElement,
    b: &DnOperadElement,
    i: usize,
) {
    let lhs = dn_pair_circ_i_with(bar, a, b, i).unwrap().to_hyperoctahedral();
    let rhs =
        crate::hyper::hyper_compose_i(&a.to_hyperoctahedral(), &b.to_hyperoctahedral(), i).unwrap();
    let pass = lhs == rhs;
    report.record(
        "morphism/to-hyper",
        pass,
        (!pass).then(|| format!("a={a:?} b={b:?} i={i} lhs={lhs:?} rhs={rhs:?}")),
    );
}

fn check_algebra_action(report: &mut Report, samples: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..samples {
        let j = 1 + (case % 3);
        let k = 1 + ((case / 3) % 3);
        let ctx_x = CommutationContext::new(&["xc", "xd"], &[], j).unwrap();
        let ctx_y = CommutationContext::new(&["yp"], &[], k).unwrap();
        let union = ctx_x.union(&ctx_y, j + k - 1).unwrap();
        let model = match LoopModel::s3_rich_model(&union) {
            Ok(m) => m,
            Err(e) => {
                report.record("algebra/model", false, Some(e.to_string()));
                continue;
            }
        };
        let a = random_elem(&ctx_x, &mut rng, 6);
        let b = random_elem(&ctx_y, &mut rng, 6);
        let i = rng.gen_range(1..=j);
        let gs: Vec<usize> = (0..j + k - 1).map(|_| rng.gen_range(0..6)).collect();
        let v = rng.gen_range(0..model.vhat_size());

        // two-stage evaluation: inner on the slice, outer on the result
        let (g_inner, v_inner) = dn_algebra_action_unchecked(
            &DnOperadElement::new(
                shift_embed_into(&b.word, 1, &union.with_slots(k)).unwrap(),
                b.perm.clone(),
            )
            .unwrap(),
            v,
            &gs[i - 1..i + k - 1],
            &model,
        );
        let mut outer_args = Vec::new();
        outer_args.extend_from_slice(&gs[..i - 1]);
        outer_args.push(g_inner);
        outer_args.extend_from_slice(&gs[i + k - 1..]);
        let two_stage = dn_algebra_action_unchecked(
            &DnOperadElement::new(
                shift_embed_into(&a.word, 1, &union.with_slots(j)).unwrap(),
                a.perm.clone(),
            )
            .unwrap(),
            v_inner,
            &outer_args,
            &model,
        );

        let composite = dn_pair_circ_i(&a, &b, i).unwrap();
        let one_stage = dn_algebra_action_unchecked(&composite, v, &gs, &model);
        // direct action against the closed formula
        let formula = dn_algebra_action_formula(&composite, v, &gs, &model).unwrap();
        let pass = two_stage == one_stage && one_stage == formula;
        report.record(
            "algebra/acts",
            pass,
            (!pass).then(|| {
                format!("a={a:?} b={b:?} i={i} gs={gs:?} v={v} two={two_stage:?} one={one_stage:?}")
            }),
        );

        // unit triviality: the level-one identity fixes every input
        let one_ctx = CommutationContext::new(&[], &[], 1).unwrap();
        let unit = DnOperadElement::identity(&one_ctx);
        let g = rng.gen_range(0..6);
        let got = dn_algebra_action_unchecked(&unit, v, &[g], &model);
        report.record(
            "algebra/unit",
            got == (g, v),
            (got != (g, v)).then(|| format!("g={g} v={v} got={got:?}")),
        );

        // equivariance: acting by a permutation first matches moving the
        // arguments
        let perms = Permutation::enumerate(j);
        let sigma = perms[rng.gen_range(0..perms.len())].clone();
        let short: Vec<usize> = (0..j).map(|_| rng.gen_range(0..6)).collect();
        let a_in_union = DnOperadElement::new(
            shift_embed_into(&a.word, 1, &union.with_slots(j)).unwrap(),
            a.perm.clone(),
        )
        .unwrap();
        let lhs = dn_algebra_action_unchecked(&a_in_union.act(&sigma), v, &short, &model);
        let moved = sigma.permute_tuple(&short);
        let rhs = dn_algebra_action_unchecked(&a_in_union, v, &moved, &model);
        report.record(
            "algebra/equivariance",
            lhs == rhs,
            (lhs != rhs).then(|| format!("a={a:?} sigma={sigma:?} gs={short:?} v={v}")),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ctx3(slots: usize) -> Arc<CommutationContext> {
        CommutationContext::new(&["a", "b", "c"], &[("a", "b")], slots).unwrap()
    }

    #[test]
    fn context_text_format_round_trips() {
        let ctx = CommutationContext::parse("labels=a,b,c\nperp=a-b\nslots=2\n").unwrap();
        assert_eq!(ctx.labels(), &["a", "b", "c"]);
        assert_eq!(ctx.slots(), 2);
        assert!(ctx.perp_by_index(0, 1));
        assert!(!ctx.perp_by_index(0, 2));
        assert!(CommutationContext::parse("labels=a\nperp=a-a\nslots=1").is_err());
        assert!(CommutationContext::parse("labels=a").is_err());
    }

    #[test]
    fn generator_squares_cancel() {
        let ctx = ctx3(2);
        let w = DnWord::from_names(&ctx, &[("a", 1), ("a", 1)]).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn commuting_cancellation_through_the_middle() {
        let ctx = ctx3(2);
        let w = DnWord::from_names(&ctx, &[("a", 1), ("b", 2), ("a", 1)]).unwrap();
        assert_eq!(w, DnWord::from_names(&ctx, &[("b", 2)]).unwrap());
    }

    #[test]
    fn equal_slots_block_commuting() {
        let ctx = ctx3(2);
        let w = DnWord::from_names(&ctx, &[("a", 1), ("b", 1), ("a", 1)]).unwrap();
        assert_eq!(w.len(), 3);
    }

    /// Rewrite closure: all words reachable by commuting swaps and
    /// adjacent-equal deletions.  Independent oracle for the normal form.
    fn rewrite_class(ctx: &CommutationContext, word: &[Letter]) -> HashSet<Vec<Letter>> {
        let mut seen = HashSet::new();
        let mut queue = vec![word.to_vec()];
        seen.insert(word.to_vec());
        while let Some(w) = queue.pop() {
            for t in 0..w.len().saturating_sub(1) {
                if w[t] == w[t + 1] {
                    let mut shorter = w.clone();
                    shorter.drain(t..t + 2);
                    if seen.insert(shorter.clone()) {
                        queue.push(shorter);
                    }
                } else if commutes(ctx, w[t], w[t + 1]) {
                    let mut swapped = w.clone();
                    swapped.swap(t, t + 1);
                    if seen.insert(swapped.clone()) {
                        queue.push(swapped);
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn normal_form_agrees_with_rewrite_closure() {
        let ctx = ctx3(2);
        let letters: Vec<Letter> = (0..3)
            .flat_map(|label| (1..=2).map(move |slot| Letter { label, slot }))
            .collect();
        let mut words: Vec<Vec<Letter>> = vec![vec![]];
        let mut frontier: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let len = rng.gen_range(5..=6);
            let w: Vec<Letter> = (0..len)
                .map(|_| letters[rng.gen_range(0..letters.len())])
                .collect();
            words.push(w);
        }
        for w in words {
            let class = rewrite_class(&ctx, &w);
            let min_len = class.iter().map(Vec::len).min().unwrap();
            let reduced: Vec<&Vec<Letter>> = class.iter().filter(|c| c.len() == min_len).collect();
            let lex_least = reduced.iter().min().unwrap();
            let nf = DnWord::new(&ctx, &w).unwrap();
            assert_eq!(nf.len(), min_len, "length not minimal for {w:?}");
            assert_eq!(
                &&nf.letters().to_vec(),
                lex_least,
                "normal form not lex-least for {w:?}"
            );
            for rep in class.iter().take(50) {
                assert_eq!(DnWord::new(&ctx, rep).unwrap(), nf);
            }
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        let ctx = ctx3(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let w = random_word(&ctx, &mut rng, 8);
            let again = DnWord::new(&ctx, w.letters()).unwrap();
            assert_eq!(w, again);
        }
    }

    #[test]
    fn inverse_and_length_properties() {
        let ctx = ctx3(3);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let x = random_word(&ctx, &mut rng, 8);
            let y = random_word(&ctx, &mut rng, 8);
            assert!(x.mul(&x.inverse()).unwrap().is_empty());
            assert!(x.inverse().mul(&x).unwrap().is_empty());
            let xy = x.mul(&y).unwrap();
            assert!(xy.len() <= x.len() + y.len());
            assert_eq!(DnWord::identity(&ctx).mul(&y).unwrap(), y);
            assert_eq!(xy.parity(), x.parity().pointwise_mul(&y.parity()));
        }
    }

    #[test]
    fn parity_examples() {
        let ctx = ctx3(2);
        assert_eq!(DnWord::identity(&ctx).parity(), SignVector::all_plus(2));
        let w = DnWord::from_names(&ctx, &[("a", 1), ("b", 2), ("a", 1)]).unwrap();
        assert_eq!(w.parity(), SignVector::new(vec![1, -1]).unwrap());
    }

    #[test]
    fn shift_embed_instances() {
        let left = ctx3(4);
        let right = CommutationContext::new(&["p"], &[], 2).unwrap();
        let y = DnWord::from_names(&right, &[("p", 1)]).unwrap();
        let got = shift_embed(&y, 3, &left).unwrap();
        assert_eq!(got.slots(), 5);
        let l = got.letters()[0];
        assert_eq!(got.ctx().label_name(l.label), "p");
        assert_eq!(l.slot, 3);
        assert!(shift_embed(&DnWord::identity(&right), 2, &left)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn shift_embed_injective_on_normal_forms() {
        let left = ctx3(2);
        assert!(left.union(&ctx3(2), 3).is_err());
        let right = CommutationContext::new(&["p", "q"], &[("p", "q")], 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut seen = std::collections::HashMap::new();
        for _ in 0..300 {
            let y = random_word(&right, &mut rng, 6);
            let image = shift_embed(&y, 2, &left).unwrap();
            if let Some(prev) = seen.insert(image.letters().to_vec(), y.clone()) {
                assert_eq!(prev, y, "embedding collided");
            }
        }
    }

    #[test]
    fn bar_is_an_involution_and_fixes_outside() {
        let ctx = ctx3(5);
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..300 {
            let z = random_word(&ctx, &mut rng, 8);
            let b = bar_automorphism(&z, 2, 3).unwrap();
            assert_eq!(bar_automorphism(&b, 2, 3).unwrap(), z);
        }
        let z = DnWord::from_names(&ctx, &[("a", 2)]).unwrap();
        let b = bar_automorphism(&z, 2, 3).unwrap();
        assert_eq!(b, DnWord::from_names(&ctx, &[("a", 4)]).unwrap());
        let z = DnWord::from_names(&ctx, &[("c", 1)]).unwrap();
        assert_eq!(bar_automorphism(&z, 2, 3).unwrap(), z);
    }

    #[test]
    fn vdash_examples_and_action_law() {
        let left = ctx3(3);
        let right = CommutationContext::new(&["p", "q"], &[], 2).unwrap();
        let target = left.union(&right, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let z = random_word(&target, &mut rng, 6);
        assert_eq!(vdash_action(&DnWord::identity(&left), &z, 2, 2).unwrap(), z);
        let x = DnWord::from_names(&left, &[("a", 2)]).unwrap();
        let got = vdash_action(&x, &DnWord::identity(&target), 2, 2).unwrap();
        assert_eq!(
            got,
            DnWord::from_names(&target, &[("a", 2), ("a", 3)]).unwrap()
        );
        for _ in 0..500 {
            let x1 = random_word(&left, &mut rng, 6);
            let x2 = random_word(&left, &mut rng, 6);
            let z = random_word(&target, &mut rng, 6);
            let both = x1.mul(&x2).unwrap();
            let lhs = vdash_action(&both, &z, 2, 2).unwrap();
            let rhs = vdash_action(&x1, &vdash_action(&x2, &z, 2, 2).unwrap(), 2, 2).unwrap();
            assert_eq!(lhs, rhs, "x1={x1:?} x2={x2:?} z={z:?}");
        }
    }

    #[test]
    fn circ_examples() {
        let left = ctx3(3);
        let right = CommutationContext::new(&["p"], &[], 2).unwrap();
        let one =
            dn_circ_i(&DnWord::identity(&left), &DnWord::identity(&right), 2).unwrap();
        assert!(one.is_empty());
        let x = DnWord::from_names(&left, &[("a", 2)]).unwrap();
        let got = dn_circ_i(&x, &DnWord::identity(&right), 2).unwrap();
        assert_eq!(got.len(), 2);
        let slots: Vec<usize> = got.letters().iter().map(|l| l.slot).collect();
        assert_eq!(slots.iter().min(), Some(&2));
        assert_eq!(slots.iter().max(), Some(&3));
    }

    #[test]
    fn pair_unit_laws() {
        let ctx = ctx3(3);
        let one_ctx = CommutationContext::new(&["u"], &[], 1).unwrap();
        let one = DnOperadElement::identity(&one_ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let a = random_elem(&ctx, &mut rng, 8);
            for i in 1..=3 {
                let r = dn_pair_circ_i(&a, &one, i).unwrap();
                assert!(elems_agree(&r, &a), "right unit failed at i={i}");
            }
            let l = dn_pair_circ_i(&one, &a, 1).unwrap();
            assert!(elems_agree(&l, &a), "left unit failed");
        }
    }

    #[test]
    fn suite_passes_and_is_deterministic() {
        let r1 = verify_dn_suite(120, 42, bar_automorphism);
        assert!(r1.ok(), "{}", r1.to_json());
        let r2 = verify_dn_suite(120, 42, bar_automorphism);
        assert_eq!(r1.to_json(), r2.to_json());
    }

    #[test]
    fn corrupted_bar_breaks_the_suite() {
        let r = verify_dn_suite(150, 42, corrupted_bar);
        assert!(!r.ok());
        assert!(r
            .cases
            .iter()
            .any(|c| !c.pass && (c.case.contains("assoc") || c.case.contains("circ"))));
    }

    #[test]
    fn loop_model_validates() {
        let ctx = ctx3(2);
        let model = LoopModel::s3_model(&ctx).unwrap();
        model.validate_for(&ctx).unwrap();
        let rich = LoopModel::s3_rich_model(&ctx).unwrap();
        rich.validate_for(&ctx).unwrap();
        assert!(rich.vhat_size() > model.vhat_size());
    }

    #[test]
    fn algebra_action_matches_formula_and_is_well_defined() {
        let ctx = ctx3(3);
        let model = LoopModel::s3_rich_model(&ctx).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..400 {
            let a = random_elem(&ctx, &mut rng, 8);
            let gs: Vec<usize> = (0..3).map(|_| rng.gen_range(0..6)).collect();
            let v = rng.gen_range(0..model.vhat_size());
            let direct = dn_algebra_action(&a, v, &gs, &model).unwrap();
            let formula = dn_algebra_action_formula(&a, v, &gs, &model).unwrap();
            assert_eq!(direct, formula, "a={a:?} gs={gs:?} v={v}");
            let mut raw = a.word.letters().to_vec();
            if !raw.is_empty() {
                let extra = raw[rng.gen_range(0..raw.len())];
                raw.push(extra);
                raw.push(extra);
            }
            let same =
                DnOperadElement::new(DnWord::new(&ctx, &raw).unwrap(), a.perm.clone()).unwrap();
            let again = dn_algebra_action(&same, v, &gs, &model).unwrap();
            assert_eq!(direct, again);
        }
    }

    #[test]
    fn algebra_single_letter_inverts_and_transports() {
        let ctx = CommutationContext::new(&["c"], &[], 1).unwrap();
        let model = LoopModel::s3_rich_model(&ctx).unwrap();
        let x = DnWord::from_names(&ctx, &[("c", 1)]).unwrap();
        let a = DnOperadElement::new(x, Permutation::identity(1)).unwrap();
        for g in 0..6 {
            for v in 0..model.vhat_size() {
                let (loop_out, point) = dn_algebra_action(&a, v, &[g], &model).unwrap();
                assert_eq!(loop_out, model.group_inv(g));
                assert_eq!(point, model.apply("c", g, v));
            }
        }
    }

    #[test]
    fn algebra_empty_word_multiplies_loops() {
        let ctx = ctx3(3);
        let model = LoopModel::s3_model(&ctx).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let perms = Permutation::enumerate(3);
            let perm = perms[rng.gen_range(0..perms.len())].clone();
            let a = DnOperadElement::new(DnWord::identity(&ctx), perm.clone()).unwrap();
            let gs: Vec<usize> = (0..3).map(|_| rng.gen_range(0..6)).collect();
            let v = rng.gen_range(0..model.vhat_size());
            let (prod, point) = dn_algebra_action(&a, v, &gs, &model).unwrap();
            assert_eq!(point, v);
            let inv = perm.inverse();
            let mut expect = 0usize;
            for t in 1..=3 {
                expect = model.group_mul(expect, gs[inv.apply(t) - 1]);
            }
            assert_eq!(prod, expect);
        }
    }
}
