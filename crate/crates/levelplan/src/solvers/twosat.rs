//! 2-SAT by strongly connected components of the implication graph.

use serde::{Deserialize, Serialize};

/// A literal: variable index and polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn of(var: usize, value: bool) -> Self {
        Lit { var, positive: value }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit { var: self.var, positive: !self.positive }
    }
}

/// Conjunction of clauses with at most two literals each.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TwoSatInstance {
    pub vars: usize,
    /// Optional variable names, for diagnostics.
    pub names: Vec<String>,
    pub clauses: Vec<(Lit, Lit)>,
}

/// Why an instance is unsatisfiable: a variable whose two literals share a
/// strongly connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contradiction {
    pub var: usize,
}

impl TwoSatInstance {
    pub fn new(vars: usize) -> Self {
        TwoSatInstance { vars, names: Vec::new(), clauses: Vec::new() }
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        self.names.resize(self.vars, String::new());
        self.names.push(name.into());
        self.vars += 1;
        self.vars - 1
    }

    pub fn name(&self, var: usize) -> String {
        self.names.get(var).filter(|s| !s.is_empty()).cloned().unwrap_or_else(|| format!("x{var}"))
    }

    pub fn clause(&mut self, a: Lit, b: Lit) {
        self.clauses.push((a, b));
    }

    pub fn unit(&mut self, a: Lit) {
        self.clauses.push((a, a));
    }

    pub fn implies(&mut self, a: Lit, b: Lit) {
        self.clauses.push((!a, b));
    }

    /// `a` xor `b` equals `value`.
    pub fn xor(&mut self, a: usize, b: usize, value: bool) {
        self.clause(Lit::pos(a), Lit::of(b, value));
        self.clause(Lit::neg(a), Lit::of(b, !value));
    }

    pub fn solve(&self) -> Result<Vec<bool>, Contradiction> {
        twosat_solve(self)
    }
}

/// Satisfying assignment, or a variable forced both ways.
pub fn twosat_solve(inst: &TwoSatInstance) -> Result<Vec<bool>, Contradiction> {
    let n = 2 * inst.vars;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &inst.clauses {
        adj[(!a).node()].push(b.node());
        adj[(!b).node()].push(a.node());
    }
    let comp = tarjan(&adj);
    let mut out = Vec::with_capacity(inst.vars);
    for v in 0..inst.vars {
        let (p, q) = (comp[2 * v], comp[2 * v + 1]);
        if p == q {
            return Err(Contradiction { var: v });
        }
        // Tarjan numbers components in reverse topological order
        out.push(p < q);
    }
    Ok(out)
}

fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == NONE {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(inst: &TwoSatInstance) -> bool {
        (0..1u32 << inst.vars).any(|m| {
            let val = |l: Lit| (m >> l.var & 1 == 1) == l.positive;
            inst.clauses.iter().all(|&(a, b)| val(a) || val(b))
        })
    }

    #[test]
    fn unit_clause_is_forced() {
        let mut t = TwoSatInstance::new(1);
        t.clause(Lit::pos(0), Lit::pos(0));
        assert_eq!(t.solve().unwrap(), vec![true]);
    }

    #[test]
    fn all_four_clauses_contradict() {
        let mut t = TwoSatInstance::new(2);
        t.clause(Lit::pos(0), Lit::pos(1));
        t.clause(Lit::neg(0), Lit::pos(1));
        t.clause(Lit::pos(0), Lit::neg(1));
        t.clause(Lit::neg(0), Lit::neg(1));
        assert!(t.solve().is_err());
    }

    #[test]
    fn xor_constraints() {
        for value in [false, true] {
            let mut t = TwoSatInstance::new(2);
            t.xor(0, 1, value);
            t.unit(Lit::pos(0));
            let x = t.solve().unwrap();
            assert_eq!(x[0] ^ x[1], value);
        }
    }

    #[test]
    fn random_instances_match_truth_tables() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3000 {
            let vars = rng.gen_range(1..=12);
            let mut t = TwoSatInstance::new(vars);
            for _ in 0..rng.gen_range(0..3 * vars) {
                let a = Lit::of(rng.gen_range(0..vars), rng.gen());
                let b = Lit::of(rng.gen_range(0..vars), rng.gen());
                t.clause(a, b);
            }
            match t.solve() {
                Ok(x) => {
                    let val = |l: Lit| x[l.var] == l.positive;
                    assert!(t.clauses.iter().all(|&(a, b)| val(a) || val(b)));
                }
                Err(_) => assert!(!brute(&t)),
            }
        }
    }
}
