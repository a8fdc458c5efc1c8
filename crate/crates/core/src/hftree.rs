//! Rose trees with urelement atoms and the generic ranking machinery.
//!
//! [`unrank`] is an unfold: a natural below the codec's urelement limit `u`
//! becomes an [`Tree::Atom`], anything else is expanded by the codec into a
//! list of smaller naturals that are unranked in turn. [`rank`] is the
//! matching fold. Every flat codec whose expansion strictly descends lifts
//! this way to a bijection between naturals and trees, which gives the
//! hereditarily finite sets, functions and permutations.
//!
//! All traversals use explicit stacks, so trees nested millions of levels
//! deep are handled (and dropped) without growing the call stack.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

use sha2::{Digest, Sha256};

use crate::permcodec::{self, Permutation};
use crate::{pairing, setfun, Error, Natural, Result};

/// Default nesting limit for [`deserialize`].
pub const DEFAULT_DEPTH_LIMIT: usize = 1_000_000;

pub enum Tree {
    Atom(Natural),
    Forest(Vec<Tree>),
}

impl Tree {
    /// The empty forest, `F []`.
    pub fn empty() -> Tree {
        Tree::Forest(Vec::new())
    }

    pub fn atom(n: impl Into<Natural>) -> Tree {
        Tree::Atom(n.into())
    }

    pub fn children(&self) -> Option<&[Tree]> {
        match self {
            Tree::Atom(_) => None,
            Tree::Forest(ts) => Some(ts),
        }
    }

    /// Bottom-up fold (catamorphism) over the tree.
    pub fn fold<R>(
        &self,
        mut atom: impl FnMut(&Natural) -> R,
        mut forest: impl FnMut(Vec<R>) -> R,
    ) -> R {
        let res: std::result::Result<R, std::convert::Infallible> =
            self.try_fold(|n| Ok(atom(n)), |rs| Ok(forest(rs)));
        match res {
            Ok(r) => r,
            Err(never) => match never {},
        }
    }

    /// Fallible [`Tree::fold`]; stops at the first error.
    pub fn try_fold<R, E>(
        &self,
        mut atom: impl FnMut(&Natural) -> Result<R, E>,
        mut forest: impl FnMut(Vec<R>) -> Result<R, E>,
    ) -> Result<R, E> {
        let root = match self {
            Tree::Atom(n) => return atom(n),
            Tree::Forest(ts) => ts,
        };
        // (children, next child to visit, where this forest's results start)
        let mut stack: Vec<(&[Tree], usize, usize)> = vec![(root, 0, 0)];
        let mut results: Vec<R> = Vec::new();
        while let Some((children, next, base)) = stack.last_mut() {
            if let Some(child) = children.get(*next) {
                *next += 1;
                match child {
                    Tree::Atom(n) => results.push(atom(n)?),
                    Tree::Forest(ts) => {
                        let base = results.len();
                        stack.push((ts, 0, base));
                    }
                }
            } else {
                let rs = results.split_off(*base);
                stack.pop();
                results.push(forest(rs)?);
            }
        }
        Ok(results.pop().expect("root result"))
    }

    /// Number of nodes (atoms and forests).
    pub fn node_count(&self) -> usize {
        self.fold(|_| 1, |rs| 1 + rs.iter().sum::<usize>())
    }

    /// Longest root-to-leaf path, counting nodes; a lone atom or `F []` has
    /// depth 1.
    pub fn depth(&self) -> usize {
        self.fold(|_| 1, |rs| 1 + rs.into_iter().max().unwrap_or(0))
    }

    /// Pre-order walk reporting structure to `visit`.
    fn walk<E>(&self, mut visit: impl FnMut(Step<'_>) -> Result<(), E>) -> Result<(), E> {
        enum Item<'a> {
            Node(&'a Tree),
            Separator,
            Close,
        }
        let mut stack = vec![Item::Node(self)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Node(Tree::Atom(n)) => visit(Step::Atom(n))?,
                Item::Node(Tree::Forest(ts)) if ts.is_empty() => visit(Step::Empty)?,
                Item::Node(Tree::Forest(ts)) => {
                    visit(Step::Open)?;
                    stack.push(Item::Close);
                    for (i, t) in ts.iter().enumerate().rev() {
                        stack.push(Item::Node(t));
                        if i > 0 {
                            stack.push(Item::Separator);
                        }
                    }
                }
                Item::Separator => visit(Step::Separator)?,
                Item::Close => visit(Step::Close)?,
            }
        }
        Ok(())
    }
}

enum Step<'a> {
    Atom(&'a Natural),
    Empty,
    Open,
    Separator,
    Close,
}

impl Drop for Tree {
    fn drop(&mut self) {
        let Tree::Forest(children) = self else {
            return;
        };
        let mut stack = std::mem::take(children);
        while let Some(mut node) = stack.pop() {
            if let Tree::Forest(grandchildren) = &mut node {
                stack.append(grandchildren);
            }
        }
    }
}

impl Clone for Tree {
    fn clone(&self) -> Self {
        self.fold(|n| Tree::Atom(n.clone()), Tree::Forest)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        let mut stack = vec![(self, other)];
        while let Some(pair) = stack.pop() {
            match pair {
                (Tree::Atom(x), Tree::Atom(y)) if x == y => {}
                (Tree::Forest(xs), Tree::Forest(ys)) if xs.len() == ys.len() => {
                    stack.extend(xs.iter().zip(ys));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Tree {}

/// Constructor notation: `F [A 2,F []]`.
impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.walk(|step| match step {
            Step::Atom(n) => write!(f, "A {n}"),
            Step::Empty => f.write_str("F []"),
            Step::Open => f.write_str("F ["),
            Step::Separator => f.write_str(","),
            Step::Close => f.write_str("]"),
        })
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Expand = fn(&Natural) -> Vec<Natural>;
pub type Collapse = fn(&[Natural]) -> Result<Natural>;

/// A flat bijection `Nat ↔ [Nat]` plus the urelement limit it is lifted
/// with.
///
/// `expand` and `collapse` must be mutually inverse, and every element of
/// `expand(m)` must be below `m + ulimit`; [`unrank`] panics on a codec
/// that breaks the descent.
#[derive(Clone)]
pub struct Codec {
    name: &'static str,
    ulimit: Natural,
    expand: Expand,
    collapse: Collapse,
    style: RenderStyle,
}

impl Codec {
    pub fn new(
        name: &'static str,
        ulimit: impl Into<Natural>,
        expand: Expand,
        collapse: Collapse,
    ) -> Self {
        Codec {
            name,
            ulimit: ulimit.into(),
            expand,
            collapse,
            style: RenderStyle::function(),
        }
    }

    /// Sets the style used by [`show`].
    pub fn with_style(mut self, style: RenderStyle) -> Self {
        self.style = style;
        self
    }

    /// Hereditarily finite sets (Ackermann's encoding).
    pub fn hfs(ulimit: impl Into<Natural>) -> Self {
        fn collapse(ns: &[Natural]) -> Result<Natural> {
            setfun::set2nat(&setfun::NatSet::new(ns.to_vec())?)
        }
        Codec::new("hfs", ulimit, |n| setfun::nat2set(n).into_vec(), collapse)
            .with_style(RenderStyle::set())
    }

    /// Hereditarily finite functions through prefix-sum sets.
    pub fn hff(ulimit: impl Into<Natural>) -> Self {
        Codec::new("hff", ulimit, setfun::nat2fun, setfun::fun2nat)
    }

    /// Hereditarily finite functions through length-prefixed tuples.
    pub fn hff1(ulimit: impl Into<Natural>) -> Self {
        Codec::new("hff1", ulimit, pairing::nat2ftuple, pairing::ftuple2nat)
    }

    /// Hereditarily finite functions through run-length encoding.
    pub fn hff2(ulimit: impl Into<Natural>) -> Self {
        Codec::new("hff2", ulimit, setfun::nat2rle, setfun::rle2nat)
    }

    /// Hereditarily finite permutations.
    pub fn hfp(ulimit: impl Into<Natural>) -> Self {
        fn collapse(ns: &[Natural]) -> Result<Natural> {
            Ok(permcodec::perm2nat(&Permutation::from_naturals(ns)?))
        }
        Codec::new(
            "hfp",
            ulimit,
            |n| permcodec::nat2perm(n).to_naturals(),
            collapse,
        )
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn ulimit(&self) -> &Natural {
        &self.ulimit
    }

    pub fn style(&self) -> &RenderStyle {
        &self.style
    }

    pub fn expand(&self, n: &Natural) -> Vec<Natural> {
        (self.expand)(n)
    }

    pub fn collapse(&self, ns: &[Natural]) -> Result<Natural> {
        (self.collapse)(ns)
    }
}

impl fmt::Debug for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Codec")
            .field("name", &self.name)
            .field("ulimit", &self.ulimit)
            .finish()
    }
}

/// Unfolds `n` into a tree: `Atom(n)` below the urelement limit, otherwise
/// a forest of the unranked elements of `expand(n - ulimit)`.
pub fn unrank(codec: &Codec, n: &Natural) -> Tree {
    enum Task {
        Node(Natural),
        Build(usize),
    }
    let u = &codec.ulimit;
    let mut tasks = vec![Task::Node(n.clone())];
    let mut built: Vec<Tree> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Node(m) if m < *u => built.push(Tree::Atom(m)),
            Task::Node(m) => {
                let parts = codec.expand(&(&m - u));
                assert!(
                    parts.iter().all(|p| *p < m),
                    "codec {} does not descend at {m}",
                    codec.name
                );
                tasks.push(Task::Build(parts.len()));
                tasks.extend(parts.into_iter().rev().map(Task::Node));
            }
            Task::Build(k) => {
                let children = built.split_off(built.len() - k);
                built.push(Tree::Forest(children));
            }
        }
    }
    built.pop().expect("unrank produces one tree")
}

/// Folds a tree back to its natural; inverse of [`unrank`].
pub fn rank(codec: &Codec, t: &Tree) -> Result<Natural> {
    let u = &codec.ulimit;
    t.try_fold(
        |v| {
            if v < u {
                Ok(v.clone())
            } else {
                Err(Error::UrelementOutOfRange {
                    value: v.clone(),
                    ulimit: u.clone(),
                })
            }
        },
        |ranks| Ok(u + codec.collapse(&ranks)?),
    )
}

/// Lazily unranks `start, start + 1, ...`.
pub fn enumerate(codec: &Codec, start: Natural) -> Enumerate {
    Enumerate {
        codec: codec.clone(),
        next: start,
    }
}

#[derive(Debug, Clone)]
pub struct Enumerate {
    codec: Codec,
    next: Natural,
}

impl Iterator for Enumerate {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        let t = unrank(&self.codec, &self.next);
        self.next += 1u32;
        Some(t)
    }
}

/// Brackets and separator used by [`render`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RenderStyle {
    pub open: String,
    pub separator: String,
    pub close: String,
}

impl RenderStyle {
    pub fn new(open: &str, separator: &str, close: &str) -> Self {
        RenderStyle {
            open: open.into(),
            separator: separator.into(),
            close: close.into(),
        }
    }

    /// `{a,b}`
    pub fn set() -> Self {
        Self::new("{", ",", "}")
    }

    /// `(a b)`
    pub fn function() -> Self {
        Self::new("(", " ", ")")
    }
}

/// Renders atoms as decimals and forests with the style's brackets.
///
/// With `ulimit > 1` the empty forest prints as `0`, which is
/// indistinguishable from the atom 0; use [`serialize`] for a lossless form.
pub fn render(style: &RenderStyle, ulimit: &Natural, t: &Tree) -> Result<String> {
    let mut out = String::new();
    let zero_for_empty = *ulimit > Natural::from(1u32);
    t.walk(|step| {
        match step {
            Step::Atom(n) if n >= ulimit => {
                return Err(Error::UrelementOutOfRange {
                    value: n.clone(),
                    ulimit: ulimit.clone(),
                })
            }
            Step::Atom(n) => write!(out, "{n}").expect("write to String"),
            Step::Empty if zero_for_empty => out.push('0'),
            Step::Empty => {
                out.push_str(&style.open);
                out.push_str(&style.close);
            }
            Step::Open => out.push_str(&style.open),
            Step::Separator => out.push_str(&style.separator),
            Step::Close => out.push_str(&style.close),
        }
        Ok(())
    })?;
    Ok(out)
}

/// Unranks `n` and renders it in the codec's style (`setShow`, `funShow`,
/// `permShow`, ...).
pub fn show(codec: &Codec, n: &Natural) -> String {
    render(&codec.style, &codec.ulimit, &unrank(codec, n)).expect("unrank keeps atoms below ulimit")
}

/// Lossless text form: `a<decimal>` for atoms, `(t1 t2 ...)` for forests.
pub fn serialize(t: &Tree) -> String {
    let mut out = String::new();
    write_serialized(t, &mut out).expect("write to String");
    out
}

fn write_serialized(t: &Tree, out: &mut impl fmt::Write) -> fmt::Result {
    t.walk(|step| match step {
        Step::Atom(n) => write!(out, "a{n}"),
        Step::Empty => out.write_str("()"),
        Step::Open => out.write_char('('),
        Step::Separator => out.write_char(' '),
        Step::Close => out.write_char(')'),
    })
}

/// Parses the [`serialize`] format, nesting at most
/// [`DEFAULT_DEPTH_LIMIT`] levels.
pub fn deserialize(s: &str) -> Result<Tree> {
    deserialize_with_limit(s, DEFAULT_DEPTH_LIMIT)
}

pub fn deserialize_with_limit(s: &str, depth_limit: usize) -> Result<Tree> {
    let bytes = s.as_bytes();
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let mut open: Vec<Vec<Tree>> = Vec::new();
    let mut done: Option<Tree> = None;
    let mut pos = 0;
    // true right after '(' or ' ': a tree must follow
    let mut want_tree = true;
    while pos < bytes.len() {
        if done.is_some() {
            return Err(err(pos, "trailing input after tree"));
        }
        let c = bytes[pos];
        let finished = match c {
            b'(' if want_tree => {
                if open.len() >= depth_limit {
                    return Err(Error::DepthLimit { limit: depth_limit });
                }
                open.push(Vec::new());
                pos += 1;
                None
            }
            b')' => {
                let children = open.pop().ok_or_else(|| err(pos, "unbalanced ')'"))?;
                if want_tree && !children.is_empty() {
                    return Err(err(pos, "expected a tree before ')'"));
                }
                pos += 1;
                Some(Tree::Forest(children))
            }
            b'a' if want_tree => {
                let start = pos + 1;
                let len = bytes[start..]
                    .iter()
                    .take_while(|b| b.is_ascii_digit())
                    .count();
                if len == 0 {
                    return Err(err(start, "expected decimal digits after 'a'"));
                }
                let digits = &s[start..start + len];
                pos = start + len;
                Some(Tree::Atom(digits.parse().expect("ascii digits")))
            }
            b' ' if !want_tree && !open.is_empty() => {
                want_tree = true;
                pos += 1;
                None
            }
            _ => return Err(err(pos, &format!("unexpected character {:?}", c as char))),
        };
        if let Some(t) = finished {
            want_tree = false;
            match open.last_mut() {
                Some(siblings) => siblings.push(t),
                None => done = Some(t),
            }
        } else if c == b'(' {
            want_tree = true;
        }
    }
    if !open.is_empty() {
        return Err(err(bytes.len(), "unclosed '('"));
    }
    done.ok_or_else(|| err(bytes.len(), "empty input"))
}

/// Node of a [`Dag`]; forest children are indices into [`Dag::nodes`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DagNode {
    Atom(Natural),
    Forest(Vec<usize>),
}

/// A tree with structurally equal subtrees merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    nodes: Vec<DagNode>,
    root: usize,
}

/// Merges structurally identical subtrees (hash-consing).
///
/// Nodes are keyed by their content with children already replaced by
/// their ids, so equal keys mean equal subtrees.
pub fn to_dag(t: &Tree) -> Dag {
    let table = RefCell::new((HashMap::<DagNode, usize>::new(), Vec::<DagNode>::new()));
    let intern = |node: DagNode| -> usize {
        let (ids, nodes) = &mut *table.borrow_mut();
        *ids.entry(node).or_insert_with_key(|key| {
            nodes.push(key.clone());
            nodes.len() - 1
        })
    };
    let root = t.fold(
        |n| intern(DagNode::Atom(n.clone())),
        |children| intern(DagNode::Forest(children)),
    );
    let (_, nodes) = table.into_inner();
    Dag { nodes, root }
}

impl Dag {
    pub fn nodes(&self) -> &[DagNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Edges counted with multiplicity (a node used twice by the same parent
    /// contributes two ordinal-labelled edges).
    pub fn edge_count(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                DagNode::Atom(_) => 0,
                DagNode::Forest(cs) => cs.len(),
            })
            .sum()
    }

    /// Expands shared nodes back into a tree.
    pub fn to_tree(&self) -> Tree {
        // nodes are stored children-first, so one forward pass suffices
        let mut built: Vec<Option<Tree>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            built.push(Some(match node {
                DagNode::Atom(n) => Tree::Atom(n.clone()),
                DagNode::Forest(cs) => Tree::Forest(
                    cs.iter()
                        .map(|&c| built[c].clone().expect("child built"))
                        .collect(),
                ),
            }));
        }
        built[self.root].take().expect("root built")
    }

    /// SHA-256 of the serialized subtree rooted at `id`, as hex.
    pub fn node_hash(&self, id: usize) -> String {
        struct HashWriter(Sha256);
        impl fmt::Write for HashWriter {
            fn write_str(&mut self, s: &str) -> fmt::Result {
                self.0.update(s.as_bytes());
                Ok(())
            }
        }
        let mut w = HashWriter(Sha256::new());
        self.write_subtree(id, &mut w)
            .expect("hash writer is infallible");
        w.0.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn write_subtree(&self, id: usize, out: &mut impl fmt::Write) -> fmt::Result {
        enum Item {
            Node(usize),
            Separator,
            Close,
        }
        let mut stack = vec![Item::Node(id)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Node(i) => match &self.nodes[i] {
                    DagNode::Atom(n) => write!(out, "a{n}")?,
                    DagNode::Forest(cs) if cs.is_empty() => out.write_str("()")?,
                    DagNode::Forest(cs) => {
                        out.write_char('(')?;
                        stack.push(Item::Close);
                        for (k, &c) in cs.iter().enumerate().rev() {
                            stack.push(Item::Node(c));
                            if k > 0 {
                                stack.push(Item::Separator);
                            }
                        }
                    }
                },
                Item::Separator => out.write_char(' ')?,
                Item::Close => out.write_char(')')?,
            }
        }
        Ok(())
    }

    /// Graphviz `digraph`: one node per distinct subtree labelled by an
    /// 8-hex-digit prefix of its serialized form's SHA-256, with edges from
    /// each forest to its elements labelled by 0-based child position.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hf {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let hash = self.node_hash(i);
            let shape = match node {
                DagNode::Atom(_) => "box",
                DagNode::Forest(_) if i == self.root => "doublecircle",
                DagNode::Forest(_) => "circle",
            };
            writeln!(out, "  n{i} [label=\"{}\", shape={shape}];", &hash[..8])
                .expect("write to String");
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if let DagNode::Forest(cs) = node {
                for (k, c) in cs.iter().enumerate() {
                    writeln!(out, "  n{i} -> n{c} [label=\"{k}\"];").expect("write to String");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `true` when no atom occurs anywhere in `t`.
pub fn is_pure(t: &Tree) -> bool {
    t.fold(|_| false, |rs| rs.into_iter().all(|x| x))
}

/// Largest atom in `t`, if any.
pub fn max_atom(t: &Tree) -> Option<Natural> {
    t.fold(|n| Some(n.clone()), |rs| rs.into_iter().flatten().max())
}
