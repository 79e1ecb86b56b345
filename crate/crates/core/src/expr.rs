//! Hash-consed expression graphs compiled to linear tapes.
//!
//! An integrand is written once as a graph over the variables `y`, `z` and
//! the curve parameters, then evaluated as intervals, univariate jets or
//! bivariate jets through the [`Scalar`] trait.

use std::collections::{HashMap, HashSet};

use crate::interval::{Interval, IntervalError};
use crate::taylor::{Jet1, Jet2};

/// Arithmetic shared by intervals and jets.
pub trait Scalar: Clone {
    fn constant_like(&self, v: Interval) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sqr(&self) -> Self;
    fn powi(&self, n: u32) -> Self;
    fn scale(&self, s: Interval) -> Self;
    fn div(&self, o: &Self) -> Result<Self, IntervalError>;
    fn sin_cos(&self) -> (Self, Self);
    fn sinh_cosh(&self) -> (Self, Self);
    fn exp(&self) -> Self;
    fn x_minus_sin(&self) -> Self;
    /// Enclosure of the function value over the box.
    fn value(&self) -> Interval;
    fn is_finite(&self) -> bool;
}

impl Scalar for Interval {
    fn constant_like(&self, v: Interval) -> Self {
        v
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn sqr(&self) -> Self {
        Interval::sqr(*self)
    }
    fn powi(&self, n: u32) -> Self {
        Interval::powi(*self, n)
    }
    fn scale(&self, s: Interval) -> Self {
        *self * s
    }
    fn div(&self, o: &Self) -> Result<Self, IntervalError> {
        Interval::div(*self, *o)
    }
    fn sin_cos(&self) -> (Self, Self) {
        (self.sin(), self.cos())
    }
    fn sinh_cosh(&self) -> (Self, Self) {
        (self.sinh(), self.cosh())
    }
    fn exp(&self) -> Self {
        Interval::exp(*self)
    }
    fn x_minus_sin(&self) -> Self {
        Interval::x_minus_sin(*self)
    }
    fn value(&self) -> Interval {
        *self
    }
    fn is_finite(&self) -> bool {
        Interval::is_finite(*self)
    }
}

impl Scalar for Jet1 {
    fn constant_like(&self, v: Interval) -> Self {
        Jet1::constant(self.order(), v)
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn sqr(&self) -> Self {
        Jet1::sqr(self)
    }
    fn powi(&self, n: u32) -> Self {
        Jet1::powi(self, n)
    }
    fn scale(&self, s: Interval) -> Self {
        Jet1::scale(self, s)
    }
    fn div(&self, o: &Self) -> Result<Self, IntervalError> {
        Jet1::div(self, o)
    }
    fn sin_cos(&self) -> (Self, Self) {
        Jet1::sin_cos(self)
    }
    fn sinh_cosh(&self) -> (Self, Self) {
        Jet1::sinh_cosh(self)
    }
    fn exp(&self) -> Self {
        Jet1::exp(self)
    }
    fn x_minus_sin(&self) -> Self {
        Jet1::x_minus_sin(self)
    }
    fn value(&self) -> Interval {
        Jet1::value(self)
    }
    fn is_finite(&self) -> bool {
        Jet1::is_finite(self)
    }
}

impl Scalar for Jet2 {
    fn constant_like(&self, v: Interval) -> Self {
        let (oy, oz) = self.orders();
        Jet2::constant(oy, oz, v)
    }
    fn add(&self, o: &Self) -> Self {
        Jet2::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Jet2::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Jet2::mul(self, o)
    }
    fn neg(&self) -> Self {
        Jet2::neg(self)
    }
    fn sqr(&self) -> Self {
        Jet2::sqr(self)
    }
    fn powi(&self, n: u32) -> Self {
        Jet2::powi(self, n)
    }
    fn scale(&self, s: Interval) -> Self {
        Jet2::scale(self, s)
    }
    fn div(&self, o: &Self) -> Result<Self, IntervalError> {
        Jet2::div(self, o)
    }
    fn sin_cos(&self) -> (Self, Self) {
        Jet2::sin_cos(self)
    }
    fn sinh_cosh(&self) -> (Self, Self) {
        Jet2::sinh_cosh(self)
    }
    fn exp(&self) -> Self {
        Jet2::exp(self)
    }
    fn x_minus_sin(&self) -> Self {
        Jet2::x_minus_sin(self)
    }
    fn value(&self) -> Interval {
        Jet2::value(self)
    }
    fn is_finite(&self) -> bool {
        Jet2::is_finite(self)
    }
}

/// Graph inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Y,
    Z,
    Eps,
    Amp,
}

/// Handle to a node in a [`Builder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Var(Var),
    Const(u64, u64),
    Add(E, E),
    Sub(E, E),
    Mul(E, E),
    Div(E, E),
    Neg(E),
    Sqr(E),
    Powi(E, u32),
    Sin(E),
    Cos(E),
    Sinh(E),
    Cosh(E),
    Exp(E),
    XMinusSin(E),
}

impl Node {
    fn children(self) -> Vec<E> {
        match self {
            Node::Var(_) | Node::Const(..) => vec![],
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => vec![a, b],
            Node::Neg(a)
            | Node::Sqr(a)
            | Node::Powi(a, _)
            | Node::Sin(a)
            | Node::Cos(a)
            | Node::Sinh(a)
            | Node::Cosh(a)
            | Node::Exp(a)
            | Node::XMinusSin(a) => vec![a],
        }
    }
}

/// Builds expression graphs, sharing identical subexpressions.
#[derive(Debug, Default, Clone)]
pub struct Builder {
    nodes: Vec<Node>,
    index: HashMap<Node, E>,
}

impl Builder {
    pub fn new() -> Builder {
        Builder::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn intern(&mut self, n: Node) -> E {
        if let Some(&e) = self.index.get(&n) {
            return e;
        }
        let e = E(self.nodes.len() as u32);
        self.nodes.push(n);
        self.index.insert(n, e);
        e
    }

    pub fn var(&mut self, v: Var) -> E {
        self.intern(Node::Var(v))
    }

    pub fn constant(&mut self, c: Interval) -> E {
        self.intern(Node::Const(c.lo().to_bits(), c.hi().to_bits()))
    }

    pub fn num(&mut self, x: f64) -> E {
        self.constant(Interval::point(x))
    }

    pub fn add(&mut self, a: E, b: E) -> E {
        self.intern(Node::Add(a.min(b), a.max(b)))
    }

    pub fn sub(&mut self, a: E, b: E) -> E {
        self.intern(Node::Sub(a, b))
    }

    pub fn mul(&mut self, a: E, b: E) -> E {
        self.intern(Node::Mul(a.min(b), a.max(b)))
    }

    pub fn div(&mut self, a: E, b: E) -> E {
        self.intern(Node::Div(a, b))
    }

    pub fn neg(&mut self, a: E) -> E {
        self.intern(Node::Neg(a))
    }

    pub fn sqr(&mut self, a: E) -> E {
        self.intern(Node::Sqr(a))
    }

    pub fn powi(&mut self, a: E, n: u32) -> E {
        match n {
            1 => a,
            2 => self.sqr(a),
            _ => self.intern(Node::Powi(a, n)),
        }
    }

    pub fn sin(&mut self, a: E) -> E {
        self.intern(Node::Sin(a))
    }

    pub fn cos(&mut self, a: E) -> E {
        self.intern(Node::Cos(a))
    }

    pub fn sinh(&mut self, a: E) -> E {
        self.intern(Node::Sinh(a))
    }

    pub fn cosh(&mut self, a: E) -> E {
        self.intern(Node::Cosh(a))
    }

    pub fn exp(&mut self, a: E) -> E {
        self.intern(Node::Exp(a))
    }

    pub fn x_minus_sin(&mut self, a: E) -> E {
        self.intern(Node::XMinusSin(a))
    }

    /// Multiplies by an interval constant.
    pub fn scale(&mut self, a: E, c: Interval) -> E {
        let k = self.constant(c);
        self.mul(a, k)
    }

    /// Product of the factors, left to right. Empty products are one.
    pub fn product(&mut self, xs: &[E]) -> E {
        match xs.split_first() {
            None => self.num(1.0),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &x| self.mul(acc, x)),
        }
    }

    /// Compiles the subgraph reachable from `outputs` into a tape.
    pub fn compile(&self, outputs: &[E]) -> Tape {
        let mut reach = HashSet::new();
        let mut stack: Vec<E> = outputs.to_vec();
        while let Some(e) = stack.pop() {
            if reach.insert(e) {
                stack.extend(self.nodes[e.0 as usize].children());
            }
        }
        let mut slot: HashMap<E, u32> = HashMap::new();
        let mut ops = Vec::new();
        let mut n_slots = 0u32;
        for &o in outputs {
            self.emit(o, &reach, &mut slot, &mut ops, &mut n_slots);
        }
        let outputs = outputs.iter().map(|o| slot[o]).collect();
        let uses_z = reach
            .iter()
            .any(|e| self.nodes[e.0 as usize] == Node::Var(Var::Z));
        Tape {
            ops,
            n_slots,
            outputs,
            uses_z,
        }
    }

    fn emit(
        &self,
        root: E,
        reach: &HashSet<E>,
        slot: &mut HashMap<E, u32>,
        ops: &mut Vec<Op>,
        n: &mut u32,
    ) {
        // Iterative post-order so deep graphs cannot overflow the stack.
        let mut stack = vec![(root, false)];
        while let Some((e, expanded)) = stack.pop() {
            if slot.contains_key(&e) {
                continue;
            }
            let node = self.nodes[e.0 as usize];
            if !expanded {
                stack.push((e, true));
                for c in node.children() {
                    if !slot.contains_key(&c) {
                        stack.push((c, false));
                    }
                }
                continue;
            }
            let s = |x: E| slot[&x];
            let partner = |n: Node| self.index.get(&n).copied().filter(|p| reach.contains(p));
            let op = match node {
                Node::Var(v) => Op::Var(v),
                Node::Const(lo, hi) => {
                    Op::Const(Interval::new(f64::from_bits(lo), f64::from_bits(hi)))
                }
                Node::Add(a, b) => Op::Add(s(a), s(b)),
                Node::Sub(a, b) => Op::Sub(s(a), s(b)),
                Node::Mul(a, b) => Op::Mul(s(a), s(b)),
                Node::Div(a, b) => Op::Div(s(a), s(b)),
                Node::Neg(a) => Op::Neg(s(a)),
                Node::Sqr(a) => Op::Sqr(s(a)),
                Node::Powi(a, k) => Op::Powi(s(a), k),
                Node::Exp(a) => Op::Exp(s(a)),
                Node::XMinusSin(a) => Op::XMinusSin(s(a)),
                Node::Sin(a) | Node::Cos(a) | Node::Sinh(a) | Node::Cosh(a) => {
                    let hyperbolic = matches!(node, Node::Sinh(_) | Node::Cosh(_));
                    let (first, second) = if hyperbolic {
                        (Node::Sinh(a), Node::Cosh(a))
                    } else {
                        (Node::Sin(a), Node::Cos(a))
                    };
                    let (p, q) = (partner(first), partner(second));
                    let op = if hyperbolic {
                        Op::SinhCosh(s(a))
                    } else {
                        Op::SinCos(s(a))
                    };
                    ops.push(op);
                    let base = *n;
                    *n += 2;
                    if let Some(p) = p {
                        slot.insert(p, base);
                    }
                    if let Some(q) = q {
                        slot.insert(q, base + 1);
                    }
                    continue;
                }
            };
            ops.push(op);
            slot.insert(e, *n);
            *n += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Var(Var),
    Const(Interval),
    Add(u32, u32),
    Sub(u32, u32),
    Mul(u32, u32),
    Div(u32, u32),
    Neg(u32),
    Sqr(u32),
    Powi(u32, u32),
    /// Pushes two slots.
    SinCos(u32),
    /// Pushes two slots.
    SinhCosh(u32),
    Exp(u32),
    XMinusSin(u32),
}

/// Values bound to the graph inputs.
#[derive(Debug, Clone)]
pub struct Inputs<T> {
    pub y: T,
    pub z: T,
    pub eps: Interval,
    pub amp: Interval,
}

/// Linear program evaluating a set of graph outputs.
#[derive(Debug, Clone)]
pub struct Tape {
    ops: Vec<Op>,
    n_slots: u32,
    outputs: Vec<u32>,
    uses_z: bool,
}

impl Tape {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn uses_z(&self) -> bool {
        self.uses_z
    }

    /// Evaluates all outputs. Non-finite results are reported as overflow.
    pub fn eval<T: Scalar>(&self, inp: &Inputs<T>) -> Result<Vec<T>, IntervalError> {
        let mut v: Vec<T> = Vec::with_capacity(self.n_slots as usize);
        for op in &self.ops {
            let g = |i: u32| &v[i as usize];
            let r = match *op {
                Op::Var(Var::Y) => inp.y.clone(),
                Op::Var(Var::Z) => inp.z.clone(),
                Op::Var(Var::Eps) => inp.y.constant_like(inp.eps),
                Op::Var(Var::Amp) => inp.y.constant_like(inp.amp),
                Op::Const(c) => inp.y.constant_like(c),
                Op::Add(a, b) => g(a).add(g(b)),
                Op::Sub(a, b) => g(a).sub(g(b)),
                Op::Mul(a, b) => g(a).mul(g(b)),
                Op::Div(a, b) => g(a).div(g(b))?,
                Op::Neg(a) => g(a).neg(),
                Op::Sqr(a) => g(a).sqr(),
                Op::Powi(a, k) => g(a).powi(k),
                Op::Exp(a) => g(a).exp(),
                Op::XMinusSin(a) => g(a).x_minus_sin(),
                Op::SinCos(a) => {
                    let (s, c) = g(a).sin_cos();
                    v.push(s);
                    c
                }
                Op::SinhCosh(a) => {
                    let (s, c) = g(a).sinh_cosh();
                    v.push(s);
                    c
                }
            };
            v.push(r);
        }
        let out: Vec<T> = self
            .outputs
            .iter()
            .map(|&i| v[i as usize].clone())
            .collect();
        if out.iter().all(|o| o.is_finite()) {
            Ok(out)
        } else {
            Err(IntervalError::Overflow)
        }
    }

    /// Evaluates the first output.
    pub fn eval1<T: Scalar>(&self, inp: &Inputs<T>) -> Result<T, IntervalError> {
        Ok(self.eval(inp)?.swap_remove(0))
    }
}
