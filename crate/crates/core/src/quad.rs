//! Validated cubature: two-point Gauss-Legendre with a rigorous remainder,
//! the singular Taylor quotient rule, and adaptive subdivision.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Inputs, Tape};
use crate::interval::{Interval, IntervalError, SplitStrategy};
use crate::taylor::{Jet1, Jet2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Y,
    Z,
}

/// An axis-aligned box. One-dimensional cells keep `z = [0, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub y: Interval,
    pub z: Interval,
}

impl Cell {
    pub fn new_1d(y: Interval) -> Cell {
        Cell {
            y,
            z: Interval::ZERO,
        }
    }

    pub fn new_2d(y: Interval, z: Interval) -> Cell {
        Cell { y, z }
    }
}

/// Vanishing orders of the numerator and denominator at the singular axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orders {
    pub num_y: u32,
    pub num_z: u32,
    pub den_y: u32,
    pub den_z: u32,
}

impl Orders {
    pub const fn new(num_y: u32, num_z: u32, den_y: u32, den_z: u32) -> Orders {
        Orders {
            num_y,
            num_z,
            den_y,
            den_z,
        }
    }

    /// Keeps only the `y` orders.
    pub fn y_only(self) -> Orders {
        Orders {
            num_z: 0,
            den_z: 0,
            ..self
        }
    }

    /// Keeps only the `z` orders.
    pub fn z_only(self) -> Orders {
        Orders {
            num_y: 0,
            den_y: 0,
            ..self
        }
    }

    fn expands_y(self) -> bool {
        self.num_y > 0 || self.den_y > 0
    }

    fn expands_z(self) -> bool {
        self.num_z > 0 || self.den_z > 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Method {
    /// Two-point Gauss-Legendre with a fourth-derivative remainder.
    Gl2,
    /// Quotient rule at a singular axis, with GL2 as the fallback.
    TaylorSingular { orders: Orders },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Tolerances {
    /// Acceptance test for one cell enclosure.
    pub fn accepts(&self, enc: Interval) -> bool {
        let w = enc.width();
        w <= self.abs_tol || w <= self.rel_tol * enc.midpoint().abs()
    }
}

/// Which box edge stands for a nominal endpoint at `+pi` or `-pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PiEdge {
    Lo,
    Hi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub dim: usize,
    pub y: Interval,
    pub z: Interval,
    pub split_y: SplitStrategy,
    pub split_z: SplitStrategy,
    pub max_depth: u32,
    /// Edges whose nominal value is `+-pi`. The box uses the outer bound of
    /// the pi enclosure there and the thin overhang is subtracted afterwards.
    pub pi_edge_y: Option<PiEdge>,
    pub pi_edge_z: Option<PiEdge>,
}

impl Region {
    pub fn new_1d(y: Interval, split: SplitStrategy, max_depth: u32) -> Region {
        Region {
            dim: 1,
            y,
            z: Interval::ZERO,
            split_y: split,
            split_z: SplitStrategy::None,
            max_depth,
            pi_edge_y: None,
            pi_edge_z: None,
        }
    }

    pub fn new_2d(
        y: Interval,
        z: Interval,
        split_y: SplitStrategy,
        split_z: SplitStrategy,
        max_depth: u32,
    ) -> Region {
        Region {
            dim: 2,
            y,
            z,
            split_y,
            split_z,
            max_depth,
            pi_edge_y: None,
            pi_edge_z: None,
        }
    }

    pub fn with_pi_edges(mut self, y: Option<PiEdge>, z: Option<PiEdge>) -> Region {
        self.pi_edge_y = y;
        self.pi_edge_z = z;
        self
    }

    pub fn cell(&self) -> Cell {
        Cell {
            y: self.y,
            z: self.z,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("denominator coefficient encloses zero")]
    ZeroInDenominatorCoefficient,
    #[error("singular rule needs num order + 1 > den order")]
    NonIntegrableOrders,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("cell y={} z={} unresolvable at maximum depth: {reason}", .cell.y, .cell.z)]
    CellUnresolvable { cell: Cell, reason: EvalError },
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Something that can be integrated over cells.
pub trait Integrand: Sync {
    fn dim(&self) -> usize;

    /// Enclosure of the integrand over the cell.
    fn value(&self, cell: Cell) -> Result<Interval, EvalError>;

    /// Order-`k` Taylor coefficient along `axis`, expanded over the cell.
    fn axis_coeff(&self, cell: Cell, axis: Axis, k: usize) -> Result<Interval, EvalError>;

    /// Numerator coefficient of order `(num_y, num_z)` and denominator
    /// coefficient of order `(den_y, den_z)`, expanded over `y` x `z`.
    fn quotient_coeffs(
        &self,
        y: Interval,
        z: Interval,
        orders: Orders,
    ) -> Result<(Interval, Interval), EvalError>;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadStats {
    pub cells_evaluated: u64,
    pub cells_accepted: u64,
    pub max_depth_reached: u32,
    pub fallback_count: u64,
    pub rejected_then_split: u64,
    pub forced_at_max_depth: u64,
}

impl QuadStats {
    pub fn merge(&mut self, o: &QuadStats) {
        self.cells_evaluated += o.cells_evaluated;
        self.cells_accepted += o.cells_accepted;
        self.max_depth_reached = self.max_depth_reached.max(o.max_depth_reached);
        self.fallback_count += o.fallback_count;
        self.rejected_then_split += o.rejected_then_split;
        self.forced_at_max_depth += o.forced_at_max_depth;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadResult {
    pub enclosure: Interval,
    pub stats: QuadStats,
    /// Accepted cells in summation order; filled only when tracing.
    pub cells: Vec<(Cell, Interval)>,
}

fn inv_sqrt3() -> Interval {
    Interval::point(3.0)
        .sqrt()
        .and_then(|s| s.recip())
        .expect("sqrt(3) is positive")
}

/// Gauss nodes of `[a, b]` and the half width.
fn gauss_nodes(x: Interval) -> (Interval, Interval, Interval) {
    let (a, b) = (Interval::point(x.lo()), Interval::point(x.hi()));
    let m = (a + b).div_scalar(2.0);
    let r = (b - a).div_scalar(2.0);
    let off = r * inv_sqrt3();
    (m - off, m + off, r)
}

fn remainder_factor(h: Interval) -> Interval {
    // f''''/4! is what the jets carry, so h^5/4320 * 24 = h^5/180.
    h.powi(5).div_scalar(180.0)
}

/// Two-point Gauss-Legendre enclosure over `[a, b]`.
pub fn gl2_1d(f: &dyn Integrand, y: Interval) -> Result<Interval, EvalError> {
    let (n0, n1, r) = gauss_nodes(y);
    let q = r * (f.value(Cell::new_1d(n0))? + f.value(Cell::new_1d(n1))?);
    let h = Interval::point(y.hi()) - Interval::point(y.lo());
    let c4 = f.axis_coeff(Cell::new_1d(y), Axis::Y, 4)?;
    Ok(q + remainder_factor(h) * c4)
}

/// Tensor-product two-point Gauss-Legendre enclosure over a rectangle.
pub fn gl2_2d(f: &dyn Integrand, cell: Cell) -> Result<Interval, EvalError> {
    let (y0, y1, ry) = gauss_nodes(cell.y);
    let (z0, z1, rz) = gauss_nodes(cell.z);
    let mut s = Interval::ZERO;
    for y in [y0, y1] {
        for z in [z0, z1] {
            s = s + f.value(Cell::new_2d(y, z))?;
        }
    }
    let q = ry * rz * s;
    let hy = Interval::point(cell.y.hi()) - Interval::point(cell.y.lo());
    let hz = Interval::point(cell.z.hi()) - Interval::point(cell.z.lo());
    let cy = f.axis_coeff(cell, Axis::Y, 4)?;
    let cz = f.axis_coeff(cell, Axis::Z, 4)?;
    Ok(q + remainder_factor(hy) * hz * cy + remainder_factor(hz) * hy * cz)
}

/// `int_a^b x^(p-1) dx`, split at zero when the integrand changes sign.
fn monomial_pieces(x: Interval, p: u32) -> Vec<Interval> {
    let integral = |a: f64, b: f64| {
        let (a, b) = (Interval::point(a), Interval::point(b));
        (b.powi(p) - a.powi(p)).div_scalar(p as f64)
    };
    if x.lo() < 0.0 && x.hi() > 0.0 && (p - 1) % 2 == 1 {
        vec![integral(x.lo(), 0.0), integral(0.0, x.hi())]
    } else {
        vec![integral(x.lo(), x.hi())]
    }
}

fn expansion_box(x: Interval, expand: bool) -> Interval {
    if expand {
        x.hull_with(0.0)
    } else {
        x
    }
}

/// The singular quotient rule.
///
/// With `Num` vanishing to order `n` and `Den` to exactly order `d` at the
/// axis, `f = x^(n-d) * Num_n(xi) / Den_d(xi')`, so the integral lies in the
/// coefficient quotient times `int x^(n-d)`. Coefficients are expanded over
/// the hull of the cell and the axis.
pub fn taylor_singular(
    f: &dyn Integrand,
    cell: Cell,
    orders: Orders,
) -> Result<Interval, EvalError> {
    let dim = f.dim();
    let ey = orders.expands_y();
    let ez = dim == 2 && orders.expands_z();
    if orders.num_y < orders.den_y || orders.num_z < orders.den_z {
        return Err(EvalError::NonIntegrableOrders);
    }
    let a = expansion_box(cell.y, ey);
    let b = if dim == 2 {
        expansion_box(cell.z, ez)
    } else {
        Interval::ZERO
    };
    let (n, d) = f.quotient_coeffs(a, b, orders)?;
    if d.contains_zero() {
        return Err(EvalError::ZeroInDenominatorCoefficient);
    }
    let c = n.div(d)?;
    let py = 1 + orders.num_y - orders.den_y;
    let pz = 1 + orders.num_z - orders.den_z;
    let my = monomial_pieces(cell.y, py);
    let mz = if dim == 2 {
        monomial_pieces(cell.z, pz)
    } else {
        vec![Interval::ONE]
    };
    let mut total = Interval::ZERO;
    for &u in &my {
        for &v in &mz {
            total = total + c * u * v;
        }
    }
    Ok(total)
}

/// Integral enclosure over one cell. The flag reports a GL2 fallback.
pub fn cell_enclosure(
    f: &dyn Integrand,
    cell: Cell,
    method: &Method,
) -> Result<(Interval, bool), EvalError> {
    let gl = |cell: Cell| {
        if f.dim() == 1 {
            gl2_1d(f, cell.y)
        } else {
            gl2_2d(f, cell)
        }
    };
    match method {
        Method::Gl2 => Ok((gl(cell)?, false)),
        Method::TaylorSingular { orders } => match taylor_singular(f, cell, *orders) {
            Ok(v) if off_axis(f, cell, *orders) => match gl(cell) {
                Ok(g) => Ok((v.intersection(g).unwrap_or(v), false)),
                Err(_) => Ok((v, false)),
            },
            Ok(v) => Ok((v, false)),
            Err(EvalError::ZeroInDenominatorCoefficient) => Ok((gl(cell)?, true)),
            Err(e) => Err(e),
        },
    }
}

/// Whether the cell stays clear of every axis the expansion is taken about,
/// so the regular rule applies there too.
fn off_axis(f: &dyn Integrand, cell: Cell, orders: Orders) -> bool {
    let clear = |x: Interval| x.lo() > 0.0 || x.hi() < 0.0;
    (!orders.expands_y() || clear(cell.y)) && (f.dim() == 1 || !orders.expands_z() || clear(cell.z))
}

/// Pointwise enclosure of the integrand over a cell, usable on singular axes.
pub fn value_enclosure(
    f: &dyn Integrand,
    cell: Cell,
    method: &Method,
) -> Result<Interval, EvalError> {
    value_enclosure_at(f, cell, method, 0)
}

fn value_enclosure_at(
    f: &dyn Integrand,
    cell: Cell,
    method: &Method,
    depth: u32,
) -> Result<Interval, EvalError> {
    let first = match f.value(cell) {
        Ok(v) => return Ok(v),
        Err(e) => e,
    };
    if let Method::TaylorSingular { orders } = method {
        let ey = orders.expands_y();
        let ez = f.dim() == 2 && orders.expands_z();
        let a = expansion_box(cell.y, ey);
        let b = if f.dim() == 2 {
            expansion_box(cell.z, ez)
        } else {
            Interval::ZERO
        };
        if let Ok((n, d)) = f.quotient_coeffs(a, b, *orders) {
            if let Ok(c) = n.div(d) {
                let my = cell.y.powi(orders.num_y - orders.den_y.min(orders.num_y));
                let mz = cell.z.powi(orders.num_z - orders.den_z.min(orders.num_z));
                return Ok(c * my * mz);
            }
        }
    }
    if depth >= 16 {
        return Err(first);
    }
    let split_z = f.dim() == 2 && cell.z.width() > cell.y.width();
    let (c0, c1) = if split_z {
        let (z0, z1) = cell.z.split(SplitStrategy::Arithmetic)?;
        (Cell { z: z0, ..cell }, Cell { z: z1, ..cell })
    } else {
        let (y0, y1) = cell.y.split(SplitStrategy::Arithmetic)?;
        (Cell { y: y0, ..cell }, Cell { y: y1, ..cell })
    };
    Ok(
        value_enclosure_at(f, c0, method, depth + 1)?.hull(value_enclosure_at(
            f,
            c1,
            method,
            depth + 1,
        )?),
    )
}

fn pi_strip(edge: PiEdge) -> Interval {
    match edge {
        PiEdge::Hi => Interval::PI,
        PiEdge::Lo => -Interval::PI,
    }
}

/// Integral over a strip of thickness at most `w` lying along `axis`, split
/// along that axis until each piece is below `tol`.
fn strip_integral(
    f: &dyn Integrand,
    cell: Cell,
    along_z: bool,
    w: f64,
    method: &Method,
    tol: f64,
    depth: u32,
) -> Result<Interval, QuadError> {
    let len = if along_z {
        cell.z.width_up()
    } else {
        cell.y.width_up()
    };
    let len = if f.dim() == 1 { 1.0 } else { len };
    let part =
        value_enclosure(f, cell, method).map(|v| Interval::new(0.0, w) * Interval::point(len) * v);
    let done = match &part {
        Ok(p) => p.width() <= tol || depth >= STRIP_DEPTH || f.dim() == 1,
        Err(_) => depth >= STRIP_DEPTH || f.dim() == 1,
    };
    if done {
        return part.map_err(|reason| QuadError::CellUnresolvable { cell, reason });
    }
    let (a, b) = if along_z {
        let (z0, z1) = cell.z.split(SplitStrategy::Arithmetic)?;
        (Cell { z: z0, ..cell }, Cell { z: z1, ..cell })
    } else {
        let (y0, y1) = cell.y.split(SplitStrategy::Arithmetic)?;
        (Cell { y: y0, ..cell }, Cell { y: y1, ..cell })
    };
    Ok(strip_integral(f, a, along_z, w, method, tol, depth + 1)?
        + strip_integral(f, b, along_z, w, method, tol, depth + 1)?)
}

const STRIP_DEPTH: u32 = 24;

/// Enclosure of the integral over the overhang past `+-pi`, to be subtracted.
fn overhang(
    f: &dyn Integrand,
    region: &Region,
    method: &Method,
    tol: &Tolerances,
) -> Result<Interval, QuadError> {
    let w = Interval::PI.width_up();
    let t = tol.abs_tol * 1e-3;
    let mut total = Interval::ZERO;
    if let Some(e) = region.pi_edge_y {
        total = total
            + strip_integral(
                f,
                Cell {
                    y: pi_strip(e),
                    z: region.z,
                },
                true,
                w,
                method,
                t,
                0,
            )?;
    }
    if let Some(e) = region.pi_edge_z {
        total = total
            + strip_integral(
                f,
                Cell {
                    y: region.y,
                    z: pi_strip(e),
                },
                false,
                w,
                method,
                t,
                0,
            )?;
    }
    if let (Some(ey), Some(ez)) = (region.pi_edge_y, region.pi_edge_z) {
        let cell = Cell {
            y: pi_strip(ey),
            z: pi_strip(ez),
        };
        let v = value_enclosure(f, cell, method)
            .map_err(|reason| QuadError::CellUnresolvable { cell, reason })?;
        total = total - Interval::new(0.0, w) * Interval::point(w) * v;
    }
    Ok(total)
}

fn children(cell: Cell, region: &Region) -> Result<Vec<Cell>, IntervalError> {
    let ys = match region.split_y {
        SplitStrategy::None => vec![cell.y],
        s => {
            let (a, b) = cell.y.split(s)?;
            vec![a, b]
        }
    };
    let zs = match (region.dim, region.split_z) {
        (1, _) | (_, SplitStrategy::None) => vec![cell.z],
        (_, s) => {
            let (a, b) = cell.z.split(s)?;
            vec![a, b]
        }
    };
    Ok(ys
        .iter()
        .flat_map(|&y| zs.iter().map(move |&z| Cell { y, z }))
        .collect())
}

pub fn adaptive_integrate(
    f: &dyn Integrand,
    region: &Region,
    method: &Method,
    tol: &Tolerances,
) -> Result<QuadResult, QuadError> {
    adaptive_integrate_traced(f, region, method, tol, false)
}

/// Adaptive bisection. A cell is accepted when its enclosure meets the
/// tolerance or it sits at the maximum depth. Accepted cells are summed in
/// order of their lower-left corner so results do not depend on traversal.
pub fn adaptive_integrate_traced(
    f: &dyn Integrand,
    region: &Region,
    method: &Method,
    tol: &Tolerances,
    trace: bool,
) -> Result<QuadResult, QuadError> {
    let mut stats = QuadStats::default();
    let mut accepted: Vec<(Cell, Interval)> = Vec::new();
    let splittable = region.split_y != SplitStrategy::None
        || (region.dim == 2 && region.split_z != SplitStrategy::None);
    let mut stack = vec![(region.cell(), 0u32)];
    while let Some((cell, depth)) = stack.pop() {
        stats.cells_evaluated += 1;
        stats.max_depth_reached = stats.max_depth_reached.max(depth);
        let at_bottom = depth >= region.max_depth || !splittable;
        match cell_enclosure(f, cell, method) {
            Ok((enc, fallback)) => {
                if fallback {
                    stats.fallback_count += 1;
                }
                let ok = tol.accepts(enc);
                if ok || at_bottom {
                    if !ok {
                        stats.forced_at_max_depth += 1;
                    }
                    accepted.push((cell, enc));
                    continue;
                }
            }
            Err(reason) => {
                if at_bottom {
                    return Err(QuadError::CellUnresolvable { cell, reason });
                }
            }
        }
        stats.rejected_then_split += 1;
        for child in children(cell, region)?.into_iter().rev() {
            stack.push((child, depth + 1));
        }
    }
    stats.cells_accepted = accepted.len() as u64;
    accepted.sort_by(|a, b| {
        (a.0.y.lo(), a.0.z.lo())
            .partial_cmp(&(b.0.y.lo(), b.0.z.lo()))
            .expect("finite cell corners")
    });
    let mut enclosure = accepted.iter().fold(Interval::ZERO, |acc, (_, v)| acc + *v);
    if region.pi_edge_y.is_some() || region.pi_edge_z.is_some() {
        enclosure = enclosure - overhang(f, region, method, tol)?;
    }
    if !trace {
        accepted = Vec::new();
    }
    Ok(QuadResult {
        enclosure,
        stats,
        cells: accepted,
    })
}

/// An [`Integrand`] backed by compiled tapes.
///
/// `f` evaluates the integrand. `quotient`, when present, has two outputs
/// `[Num, Den]` with `f = Num / Den`, used by the singular rule.
#[derive(Debug, Clone)]
pub struct TapeIntegrand {
    pub dim: usize,
    pub f: Tape,
    pub quotient: Option<Tape>,
    pub eps: Interval,
    pub amp: Interval,
}

impl TapeIntegrand {
    fn inputs<T>(&self, y: T, z: T) -> Inputs<T> {
        Inputs {
            y,
            z,
            eps: self.eps,
            amp: self.amp,
        }
    }
}

impl Integrand for TapeIntegrand {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, cell: Cell) -> Result<Interval, EvalError> {
        Ok(self.f.eval1(&self.inputs(cell.y, cell.z))?)
    }

    fn axis_coeff(&self, cell: Cell, axis: Axis, k: usize) -> Result<Interval, EvalError> {
        let inp = match axis {
            Axis::Y => self.inputs(Jet1::variable(k, cell.y), Jet1::constant(k, cell.z)),
            Axis::Z => self.inputs(Jet1::constant(k, cell.y), Jet1::variable(k, cell.z)),
        };
        Ok(self.f.eval1(&inp)?.coeff(k))
    }

    /// Each coefficient is enclosed over the box directly and by a mean-value
    /// form about the box midpoint; the result is the intersection.
    fn quotient_coeffs(
        &self,
        y: Interval,
        z: Interval,
        o: Orders,
    ) -> Result<(Interval, Interval), EvalError> {
        let tape = self
            .quotient
            .as_ref()
            .expect("integrand has no quotient form");
        let (ny, nz, dy, dz) = (
            o.num_y as usize,
            o.num_z as usize,
            o.den_y as usize,
            o.den_z as usize,
        );
        let oy = ny.max(dy);
        let oz = nz.max(dz);
        let y0 = Interval::point(y.midpoint());
        let z0 = Interval::point(z.midpoint());
        let k1 = |k: usize| Interval::point((k + 1) as f64);
        if self.dim == 1 {
            let wide =
                tape.eval(&self.inputs(Jet1::variable(oy + 1, y), Jet1::constant(oy + 1, z)))?;
            let at = tape.eval(&self.inputs(Jet1::variable(oy, y0), Jet1::constant(oy, z)))?;
            let c = |out: usize, k: usize| {
                let mv = at[out].coeff(k) + k1(k) * wide[out].coeff(k + 1) * (y - y0);
                tighter(wide[out].coeff(k), mv)
            };
            return Ok((c(0, ny), c(1, dy)));
        }
        let wide = tape.eval(&self.inputs(
            Jet2::variable_y(oy + 1, oz + 1, y),
            Jet2::variable_z(oy + 1, oz + 1, z),
        ))?;
        let at =
            tape.eval(&self.inputs(Jet2::variable_y(oy, oz, y0), Jet2::variable_z(oy, oz, z0)))?;
        let c = |out: usize, i: usize, j: usize| {
            let w = &wide[out];
            let mv = at[out].coeff(i, j)
                + k1(i) * w.coeff(i + 1, j) * (y - y0)
                + k1(j) * w.coeff(i, j + 1) * (z - z0);
            tighter(w.coeff(i, j), mv)
        };
        Ok((c(0, ny, nz), c(1, dy, dz)))
    }
}

fn tighter(a: Interval, b: Interval) -> Interval {
    a.intersection(b).unwrap_or(a)
}
