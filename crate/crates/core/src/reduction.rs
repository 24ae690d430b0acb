//! Hardness instances: compiles a 3-CNF formula in which every variable
//! occurs exactly twice positively and twice negatively into a graph whose
//! proper profiles reach a half-one stable profile exactly when the encoded
//! assignment satisfies the formula.
//!
//! Node numbering, frozen:
//!
//! * 25 nodes per variable, in variable order: `x`, `~x`, `v1(x)..v7(x)`,
//!   `v1(~x)..v7(~x)`, `v0(x)`, `w0(x)`, `w1(x)..w7(x)`;
//! * 18 nodes per clause, in clause order: `c`, `u1(c)`, `u2(c)`,
//!   `nu1(c)..nu15(c)`;
//! * the `N` clique nodes;
//! * the `N + 99C/4` isolated nodes.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::decider::{max_ones_stable, DeciderError};
use crate::graph::{Graph, Profile};

pub const VARIABLE_GADGET_NODES: usize = 25;
pub const VARIABLE_GADGET_EDGES: usize = 50;
pub const CLAUSE_GADGET_NODES: usize = 18;
pub const CLAUSE_GADGET_EDGES: usize = 32;
/// Ones left in a gadget after a proper profile has run its course.
pub const GADGET_ONES: usize = 17;

const V_CHAIN: usize = 7;
const NU_COUNT: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("variable {variable} occurs {positive} times positively and {negative} times negatively; need 2 and 2")]
    Not2P2N {
        variable: usize,
        positive: usize,
        negative: usize,
    },
    #[error("clause {clause} repeats variable {variable}")]
    RepeatedVariable { clause: usize, variable: usize },
    #[error("epsilon {0} is outside (0, 1/8)")]
    EpsilonOutOfRange(Ratio<i64>),
    #[error("clique size {n} must be even and within [{min}, {max}]")]
    CliqueSizeOutOfRange { n: usize, min: usize, max: usize },
    #[error("assignment has {found} values for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error(transparent)]
    Decider(#[from] DeciderError),
}

/// A literal: variable index from 1, negative when negated.
pub type Literal = i32;

/// A validated formula with three distinct variables per clause and two
/// positive plus two negative occurrences per variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, ReductionError> {
        let mut counts = vec![(0usize, 0usize); num_vars];
        for (ci, clause) in clauses.iter().enumerate() {
            for (j, &lit) in clause.iter().enumerate() {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > num_vars {
                    return Err(ReductionError::Parse {
                        line: 0,
                        msg: format!("clause {} has literal {lit} outside 1..={num_vars}", ci + 1),
                    });
                }
                if clause[..j].iter().any(|l| l.unsigned_abs() as usize == var) {
                    return Err(ReductionError::RepeatedVariable {
                        clause: ci + 1,
                        variable: var,
                    });
                }
                let c = &mut counts[var - 1];
                if lit > 0 {
                    c.0 += 1;
                } else {
                    c.1 += 1;
                }
            }
        }
        if let Some((i, &(positive, negative))) = counts.iter().enumerate().find(|(_, &c)| c != (2, 2)) {
            return Err(ReductionError::Not2P2N {
                variable: i + 1,
                positive,
                negative,
            });
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| clause_satisfied(c, assignment))
    }

    /// Every assignment in ascending order of [`assignment_from_index`].
    pub fn satisfying_assignments(&self) -> Vec<Vec<bool>> {
        (0..1u64 << self.num_vars)
            .map(|i| assignment_from_index(self.num_vars, i))
            .filter(|a| self.evaluate(a))
            .collect()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for [a, b, c] in &self.clauses {
            out.push_str(&format!("{a} {b} {c} 0\n"));
        }
        out
    }
}

fn clause_satisfied(clause: &[Literal; 3], assignment: &[bool]) -> bool {
    clause
        .iter()
        .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
}

/// Variable 1 is the most significant bit, so index order matches reading
/// the assignment left to right as a binary number with true = 1.
pub fn assignment_from_index(num_vars: usize, index: u64) -> Vec<bool> {
    (0..num_vars).map(|i| index >> (num_vars - 1 - i) & 1 == 1).collect()
}

pub fn assignment_string(assignment: &[bool]) -> String {
    assignment.iter().map(|&b| if b { 'T' } else { 'F' }).collect()
}

/// DIMACS CNF: `c` comment lines, a `p cnf V C` header, then literals
/// terminated by `0`. Clauses may span lines.
pub fn parse_cnf(text: &str) -> Result<CnfFormula, ReductionError> {
    let err = |line, msg: String| ReductionError::Parse { line, msg };
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current: Vec<(usize, Literal)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() {
                return Err(err(line, "second header line".into()));
            }
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(err(line, format!("expected `p cnf V C`, got {t:?}")));
            }
            let v: usize = f[2].parse().map_err(|_| err(line, format!("bad variable count {:?}", f[2])))?;
            let c: usize = f[3].parse().map_err(|_| err(line, format!("bad clause count {:?}", f[3])))?;
            header = Some((v, c));
            continue;
        }
        if header.is_none() {
            return Err(err(line, "clause before the `p cnf` header".into()));
        }
        for tok in t.split_whitespace() {
            let lit: Literal = tok.parse().map_err(|_| err(line, format!("bad literal {tok:?}")))?;
            if lit != 0 {
                current.push((line, lit));
                continue;
            }
            let start = current.first().map_or(line, |c| c.0);
            let lits: Vec<Literal> = current.drain(..).map(|c| c.1).collect();
            let clause: [Literal; 3] = lits
                .as_slice()
                .try_into()
                .map_err(|_| err(start, format!("clause has {} literals, expected 3", lits.len())))?;
            clauses.push((start, clause));
        }
    }
    let (v, c) = header.ok_or_else(|| err(0, "missing `p cnf` header".into()))?;
    if let Some(&(line, _)) = current.first() {
        return Err(err(line, "clause not terminated by 0".into()));
    }
    if clauses.len() != c {
        return Err(err(0, format!("header declares {c} clauses but {} were listed", clauses.len())));
    }
    for &(line, clause) in &clauses {
        if let Some(l) = clause.iter().find(|l| l.unsigned_abs() as usize > v) {
            return Err(err(line, format!("literal {l} exceeds variable count {v}")));
        }
    }
    CnfFormula::new(v, clauses.into_iter().map(|c| c.1).collect())
}

/// Layout of one variable gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariableNodes {
    pub base: usize,
}

impl VariableNodes {
    pub fn literal(&self, positive: bool) -> usize {
        self.base + usize::from(!positive)
    }

    /// `v_i` on the chain of the given literal, `i` in 1..=7.
    pub fn v(&self, positive: bool, i: usize) -> usize {
        debug_assert!((1..=V_CHAIN).contains(&i));
        self.base + 2 + usize::from(!positive) * V_CHAIN + i - 1
    }

    pub fn v0(&self) -> usize {
        self.base + 16
    }

    /// `w_i`, `i` in 0..=7.
    pub fn w(&self, i: usize) -> usize {
        debug_assert!(i <= V_CHAIN);
        self.base + 17 + i
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.base..self.base + VARIABLE_GADGET_NODES
    }
}

/// Layout of one clause gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClauseNodes {
    pub base: usize,
}

impl ClauseNodes {
    pub fn clause(&self) -> usize {
        self.base
    }

    /// `u_i`, `i` in 1..=2.
    pub fn u(&self, i: usize) -> usize {
        debug_assert!(i == 1 || i == 2);
        self.base + i
    }

    /// `nu_j`, `j` in 1..=15.
    pub fn nu(&self, j: usize) -> usize {
        debug_assert!((1..=NU_COUNT).contains(&j));
        self.base + 2 + j
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.base..self.base + CLAUSE_GADGET_NODES
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionParams {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub clique_size: usize,
    #[serde(serialize_with = "ratio_string")]
    pub epsilon: Ratio<i64>,
}

fn ratio_string<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub params: ReductionParams,
    pub formula: CnfFormula,
}

/// Inclusive clique size bounds `12C ..= 95C/(16 eps) - 123C/4`, the upper
/// one rounded down to an even number.
pub fn clique_bounds(num_clauses: usize, epsilon: Ratio<i64>) -> (usize, usize) {
    let c = Ratio::from_integer(num_clauses as i64);
    let upper = c * 95 / (epsilon * 16) - c * 123 / 4;
    let max = upper.floor().to_integer().max(0) as usize;
    (12 * num_clauses, max - max % 2)
}

fn check_epsilon(epsilon: Ratio<i64>) -> Result<(), ReductionError> {
    if epsilon <= Ratio::from_integer(0) || epsilon >= Ratio::new(1, 8) {
        return Err(ReductionError::EpsilonOutOfRange(epsilon));
    }
    Ok(())
}

/// Builds the instance. The clique size defaults to `12C`.
pub fn build_reduction(
    phi: &CnfFormula,
    epsilon: Ratio<i64>,
    clique_size: Option<usize>,
) -> Result<ReductionInstance, ReductionError> {
    check_epsilon(epsilon)?;
    let nv = phi.num_vars();
    let nc = phi.num_clauses();
    let (min, max) = clique_bounds(nc, epsilon);
    let big_n = clique_size.unwrap_or(min);
    if big_n % 2 == 1 || big_n < min || big_n > max {
        return Err(ReductionError::CliqueSizeOutOfRange { n: big_n, min, max });
    }
    let layout = Layout { nv, nc, big_n };
    let n = layout.n();
    let mut labels = Vec::with_capacity(n);
    let mut edges = Vec::new();

    for x in 0..nv {
        let g = layout.variable(x);
        let name = format!("x{}", x + 1);
        labels.push(name.clone());
        labels.push(format!("~{name}"));
        for positive in [true, false] {
            let lit = if positive { name.clone() } else { format!("~{name}") };
            for i in 1..=V_CHAIN {
                labels.push(format!("v{i}({lit})"));
            }
        }
        labels.push(format!("v0({name})"));
        for i in 0..=V_CHAIN {
            labels.push(format!("w{i}({name})"));
        }
        for positive in [true, false] {
            for i in 1..=V_CHAIN {
                edges.push((g.literal(positive), g.v(positive, i)));
                edges.push((g.w(0), g.v(positive, i)));
                if i < V_CHAIN {
                    edges.push((g.v(positive, i), g.v(positive, i + 1)));
                }
            }
            edges.push((g.v0(), g.v(positive, V_CHAIN)));
        }
        edges.push((g.v0(), g.w(0)));
        for i in 1..=V_CHAIN {
            edges.push((g.w(0), g.w(i)));
        }
    }
    for (ci, clause) in phi.clauses().iter().enumerate() {
        let g = layout.clause(ci);
        let name = format!("c{}", ci + 1);
        labels.push(name.clone());
        labels.push(format!("u1({name})"));
        labels.push(format!("u2({name})"));
        for j in 1..=NU_COUNT {
            labels.push(format!("nu{j}({name})"));
        }
        edges.push((g.clause(), g.u(1)));
        edges.push((g.clause(), g.u(2)));
        for i in 1..=2 {
            for j in 1..=NU_COUNT {
                edges.push((g.u(i), g.nu(j)));
            }
        }
        for &lit in clause {
            let var = layout.variable(lit.unsigned_abs() as usize - 1);
            edges.push((g.clause(), var.literal(lit > 0)));
        }
    }
    let clique = layout.clique_start();
    labels.extend((0..big_n).map(|k| format!("clique{k}")));
    for a in 0..big_n {
        for b in a + 1..big_n {
            edges.push((clique + a, clique + b));
        }
    }
    labels.extend((0..n - labels.len()).map(|k| format!("iso{k}")));

    let graph = Graph::from_edges(n, &edges).expect("gadget wiring stays in range and is simple");
    Ok(ReductionInstance {
        graph,
        labels,
        params: ReductionParams {
            num_vars: nv,
            num_clauses: nc,
            clique_size: big_n,
            epsilon,
        },
        formula: phi.clone(),
    })
}

#[derive(Debug, Clone, Copy)]
struct Layout {
    nv: usize,
    nc: usize,
    big_n: usize,
}

impl Layout {
    fn variable(&self, x: usize) -> VariableNodes {
        VariableNodes {
            base: x * VARIABLE_GADGET_NODES,
        }
    }

    fn clause(&self, c: usize) -> ClauseNodes {
        ClauseNodes {
            base: self.nv * VARIABLE_GADGET_NODES + c * CLAUSE_GADGET_NODES,
        }
    }

    fn clique_start(&self) -> usize {
        self.nv * VARIABLE_GADGET_NODES + self.nc * CLAUSE_GADGET_NODES
    }

    fn isolated_count(&self) -> usize {
        self.big_n + 99 * self.nc / 4
    }

    fn n(&self) -> usize {
        self.clique_start() + self.big_n + self.isolated_count()
    }
}

impl ReductionInstance {
    fn layout(&self) -> Layout {
        Layout {
            nv: self.params.num_vars,
            nc: self.params.num_clauses,
            big_n: self.params.clique_size,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn variable(&self, x: usize) -> VariableNodes {
        self.layout().variable(x)
    }

    pub fn clause(&self, c: usize) -> ClauseNodes {
        self.layout().clause(c)
    }

    pub fn clique(&self) -> std::ops::Range<usize> {
        let s = self.layout().clique_start();
        s..s + self.params.clique_size
    }

    pub fn isolated(&self) -> std::ops::Range<usize> {
        self.clique().end..self.n()
    }

    /// Ones in every proper profile: `2V + 2C + N/2`.
    pub fn proper_ones(&self) -> usize {
        2 * self.params.num_vars + 2 * self.params.num_clauses + self.params.clique_size / 2
    }

    /// `17V + 17C + C + N`, the ones left by a satisfying proper profile.
    pub fn satisfied_ones(&self) -> usize {
        GADGET_ONES * (self.params.num_vars + self.params.num_clauses) + self.params.num_clauses + self.params.clique_size
    }

    /// `floor(n (1/4 - eps))`.
    pub fn minority_bound(&self) -> usize {
        (Ratio::from_integer(self.n() as i64) * (Ratio::new(1, 4) - self.params.epsilon))
            .floor()
            .to_integer() as usize
    }

    fn check_assignment(&self, assignment: &[bool]) -> Result<(), ReductionError> {
        if assignment.len() != self.params.num_vars {
            return Err(ReductionError::AssignmentLength {
                expected: self.params.num_vars,
                found: assignment.len(),
            });
        }
        Ok(())
    }

    /// Ones on `w0` and the true literal of each variable, on `u1`, `u2` of each
    /// clause, and on the lower half of the clique.
    pub fn proper_profile(&self, assignment: &[bool]) -> Result<Profile, ReductionError> {
        self.check_assignment(assignment)?;
        let mut ones = Vec::with_capacity(self.proper_ones());
        for (x, &value) in assignment.iter().enumerate() {
            let g = self.variable(x);
            ones.extend([g.w(0), g.literal(value)]);
        }
        for c in 0..self.params.num_clauses {
            let g = self.clause(c);
            ones.extend([g.u(1), g.u(2)]);
        }
        ones.extend(self.clique().take(self.params.clique_size / 2));
        Ok(Profile::with_ones(self.n(), ones))
    }

    /// A legal update order from the proper profile: the rest of the clique,
    /// each true literal's chain then `v0` and `w1..w7`, every `nu`, and the
    /// clause nodes of satisfied clauses.
    pub fn proper_schedule(&self, assignment: &[bool]) -> Result<Vec<usize>, ReductionError> {
        self.check_assignment(assignment)?;
        let mut order: Vec<usize> = self.clique().skip(self.params.clique_size / 2).collect();
        for (x, &value) in assignment.iter().enumerate() {
            let g = self.variable(x);
            order.extend((1..=V_CHAIN).map(|i| g.v(value, i)));
            order.push(g.v0());
            order.extend((1..=V_CHAIN).map(|i| g.w(i)));
        }
        for (c, clause) in self.formula.clauses().iter().enumerate() {
            let g = self.clause(c);
            order.extend((1..=NU_COUNT).map(|j| g.nu(j)));
            if clause_satisfied(clause, assignment) {
                order.push(g.clause());
            }
        }
        Ok(order)
    }

    /// Most ones reachable from the proper profile of `assignment`.
    pub fn final_ones(&self, assignment: &[bool]) -> Result<usize, ReductionError> {
        Ok(max_ones_stable(&self.graph, &self.proper_profile(assignment)?)?)
    }

    /// True when the proper profile of `assignment` reaches at least `n/2` ones.
    pub fn check_correspondence(&self, assignment: &[bool]) -> Result<bool, ReductionError> {
        Ok(2 * self.final_ones(assignment)? >= self.n())
    }

    pub fn correspondence_report(&self) -> Result<CorrespondenceReport, ReductionError> {
        let nv = self.params.num_vars;
        let mut rows = Vec::with_capacity(1 << nv);
        for i in 0..1u64 << nv {
            let a = assignment_from_index(nv, i);
            let final_ones = self.final_ones(&a)?;
            let satisfies = self.formula.evaluate(&a);
            let mbm = 2 * final_ones >= self.n();
            rows.push(CorrespondenceRow {
                assignment: assignment_string(&a),
                satisfies,
                final_ones,
                half_n: self.n() / 2,
                mbm,
            });
        }
        let mismatches = rows.iter().filter(|r| r.satisfies != r.mbm).count();
        Ok(CorrespondenceReport { rows, mismatches })
    }

    /// Label map as a JSON-friendly list of `(id, label)`.
    pub fn label_map(&self) -> std::collections::BTreeMap<usize, &str> {
        self.labels.iter().enumerate().map(|(i, l)| (i, l.as_str())).collect()
    }

    /// Non-proper profiles with `2V + 2C + N/2` ones, built from the proper
    /// profile of `assignment`: inside one gadget, the proper pair is replaced
    /// by every pair of gadget nodes that is not proper; and one clique one is
    /// moved to an isolated node. Each comes with a short description.
    pub fn degenerate_profiles(&self, assignment: &[bool]) -> Result<Vec<(String, Profile)>, ReductionError> {
        let base = self.proper_profile(assignment)?;
        let mut out = Vec::new();
        let mut gadgets: Vec<(String, std::ops::Range<usize>, Vec<[usize; 2]>)> = (0..self.params.num_vars)
            .map(|x| {
                let g = self.variable(x);
                let proper = vec![[g.literal(true), g.w(0)], [g.literal(false), g.w(0)]];
                (format!("x{}", x + 1), g.range(), proper)
            })
            .collect();
        gadgets.extend((0..self.params.num_clauses).map(|c| {
            let g = self.clause(c);
            (format!("c{}", c + 1), g.range(), vec![[g.u(1), g.u(2)]])
        }));
        for (name, range, proper_pairs) in gadgets {
            let proper: Vec<usize> = range.clone().filter(|&v| base.get(v)).collect();
            for a in range.clone() {
                for b in a + 1..range.end {
                    if proper_pairs.contains(&[a, b]) {
                        continue;
                    }
                    let mut s = base.clone();
                    for &v in &proper {
                        s.set(v, false);
                    }
                    s.set(a, true);
                    s.set(b, true);
                    out.push((format!("{name}: ones on {} and {}", self.labels[a], self.labels[b]), s));
                }
            }
        }
        let mut s = base.clone();
        s.set(self.clique().start, false);
        s.set(self.isolated().start, true);
        out.push(("clique one moved to an isolated node".into(), s));
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceRow {
    pub assignment: String,
    pub satisfies: bool,
    pub final_ones: usize,
    pub half_n: usize,
    pub mbm: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub rows: Vec<CorrespondenceRow>,
    pub mismatches: usize,
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "assignment  satisfies  final_ones  n/2  mbm")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<10}  {:<9}  {:>10}  {:>3}  {}",
                r.assignment, r.satisfies, r.final_ones, r.half_n, r.mbm
            )?;
        }
        write!(f, "{} mismatches", self.mismatches)
    }
}

/// The four-clause formula over three variables used in examples and tests:
/// `(x1 | x2 | x3) & (~x1 | ~x2 | ~x3) & (x1 | ~x2 | x3) & (~x1 | x2 | ~x3)`.
pub const EXAMPLE_CNF: &str = "c two positive and two negative occurrences per variable
p cnf 3 4
1 2 3 0
-1 -2 -3 0
1 -2 3 0
-1 2 -3 0
";
