//! Lattice terms as shared subterm graphs.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{Lattice, LatticeError};

#[derive(Debug)]
pub enum TermNode {
    /// Zero-based variable index; rendered as `x1, x2, ...`.
    Var(usize),
    Const(String),
    Meet(Vec<LatticeTerm>),
    Join(Vec<LatticeTerm>),
}

/// A lattice term. Cloning is cheap and shares structure, so terms built by
/// repeated substitution stay small as graphs even when their trees are huge.
#[derive(Clone, Debug)]
pub struct LatticeTerm(Arc<TermNode>);

fn key(t: &LatticeTerm) -> usize {
    Arc::as_ptr(&t.0) as usize
}

impl LatticeTerm {
    pub fn var(i: usize) -> Self {
        LatticeTerm(Arc::new(TermNode::Var(i)))
    }

    pub fn constant(name: impl Into<String>) -> Self {
        LatticeTerm(Arc::new(TermNode::Const(name.into())))
    }

    /// Meet of the given terms; a single term is returned unchanged.
    ///
    /// # Panics
    /// On an empty iterator.
    pub fn meet_all(ts: impl IntoIterator<Item = LatticeTerm>) -> Self {
        let mut ts: Vec<_> = ts.into_iter().collect();
        assert!(!ts.is_empty(), "empty meet");
        if ts.len() == 1 {
            return ts.pop().unwrap();
        }
        LatticeTerm(Arc::new(TermNode::Meet(ts)))
    }

    /// Join of the given terms; a single term is returned unchanged.
    ///
    /// # Panics
    /// On an empty iterator.
    pub fn join_all(ts: impl IntoIterator<Item = LatticeTerm>) -> Self {
        let mut ts: Vec<_> = ts.into_iter().collect();
        assert!(!ts.is_empty(), "empty join");
        if ts.len() == 1 {
            return ts.pop().unwrap();
        }
        LatticeTerm(Arc::new(TermNode::Join(ts)))
    }

    pub fn meet(&self, other: &LatticeTerm) -> Self {
        Self::meet_all([self.clone(), other.clone()])
    }

    pub fn join(&self, other: &LatticeTerm) -> Self {
        Self::join_all([self.clone(), other.clone()])
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    /// One more than the largest variable index (0 for closed terms).
    pub fn arity(&self) -> usize {
        let mut best = 0;
        self.visit(&mut |n| {
            if let TermNode::Var(i) = n {
                best = best.max(i + 1);
            }
        });
        best
    }

    /// Names of all constants, sorted and deduplicated.
    pub fn constants(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit(&mut |n| {
            if let TermNode::Const(c) = n {
                out.push(c.clone());
            }
        });
        out.sort();
        out.dedup();
        out
    }

    /// Calls `f` once per distinct node.
    fn visit(&self, f: &mut impl FnMut(&TermNode)) {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            if !seen.insert(key(&t)) {
                continue;
            }
            f(&t.0);
            if let TermNode::Meet(cs) | TermNode::Join(cs) = &*t.0 {
                stack.extend(cs.iter().cloned());
            }
        }
    }

    /// Number of distinct nodes.
    pub fn dag_size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Number of nodes of the fully expanded tree, saturating.
    pub fn tree_size(&self) -> u64 {
        fn go(t: &LatticeTerm, memo: &mut HashMap<usize, u64>) -> u64 {
            if let Some(&s) = memo.get(&key(t)) {
                return s;
            }
            let s = match &*t.0 {
                TermNode::Var(_) | TermNode::Const(_) => 1,
                TermNode::Meet(cs) | TermNode::Join(cs) => cs
                    .iter()
                    .fold(1u64, |acc, c| acc.saturating_add(go(c, memo))),
            };
            memo.insert(key(t), s);
            s
        }
        go(self, &mut HashMap::new())
    }

    /// Replaces variable `i` by `args[i]`.
    pub fn substitute(&self, args: &[LatticeTerm]) -> LatticeTerm {
        fn go(
            t: &LatticeTerm,
            args: &[LatticeTerm],
            memo: &mut HashMap<usize, LatticeTerm>,
        ) -> LatticeTerm {
            if let Some(r) = memo.get(&key(t)) {
                return r.clone();
            }
            let r = match &*t.0 {
                TermNode::Var(i) => args.get(*i).cloned().unwrap_or_else(|| t.clone()),
                TermNode::Const(_) => t.clone(),
                TermNode::Meet(cs) => LatticeTerm::meet_all(cs.iter().map(|c| go(c, args, memo))),
                TermNode::Join(cs) => LatticeTerm::join_all(cs.iter().map(|c| go(c, args, memo))),
            };
            memo.insert(key(t), r.clone());
            r
        }
        go(self, args, &mut HashMap::new())
    }

    /// Replaces named constants by terms; unlisted constants stay.
    pub fn bind_constants(&self, binds: &HashMap<String, LatticeTerm>) -> LatticeTerm {
        fn go(
            t: &LatticeTerm,
            b: &HashMap<String, LatticeTerm>,
            memo: &mut HashMap<usize, LatticeTerm>,
        ) -> LatticeTerm {
            if let Some(r) = memo.get(&key(t)) {
                return r.clone();
            }
            let r = match &*t.0 {
                TermNode::Var(_) => t.clone(),
                TermNode::Const(c) => b.get(c).cloned().unwrap_or_else(|| t.clone()),
                TermNode::Meet(cs) => LatticeTerm::meet_all(cs.iter().map(|c| go(c, b, memo))),
                TermNode::Join(cs) => LatticeTerm::join_all(cs.iter().map(|c| go(c, b, memo))),
            };
            memo.insert(key(t), r.clone());
            r
        }
        go(self, binds, &mut HashMap::new())
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> LatticeTerm {
        let args: Vec<_> = perm.iter().map(|&j| LatticeTerm::var(j)).collect();
        self.substitute(&args)
    }

    /// Bottom-up evaluation; every shared node is evaluated once.
    pub fn eval<L: Lattice>(
        &self,
        lattice: &L,
        vars: &[L::Element],
        consts: &HashMap<String, L::Element>,
    ) -> Result<L::Element, LatticeError> {
        let arity = self.arity();
        if arity > vars.len() {
            return Err(LatticeError::ArityMismatch {
                want: arity,
                got: vars.len(),
            });
        }
        let mut memo: HashMap<usize, L::Element> = HashMap::new();
        self.eval_memo(lattice, vars, consts, &mut memo)
    }

    fn eval_memo<L: Lattice>(
        &self,
        l: &L,
        vars: &[L::Element],
        consts: &HashMap<String, L::Element>,
        memo: &mut HashMap<usize, L::Element>,
    ) -> Result<L::Element, LatticeError> {
        if let Some(v) = memo.get(&key(self)) {
            return Ok(v.clone());
        }
        let v = match &*self.0 {
            TermNode::Var(i) => vars[*i].clone(),
            TermNode::Const(c) => consts
                .get(c)
                .cloned()
                .ok_or_else(|| LatticeError::UnboundConstant(c.clone()))?,
            TermNode::Meet(cs) => {
                let mut acc = cs[0].eval_memo(l, vars, consts, memo)?;
                for c in &cs[1..] {
                    acc = l.meet(&acc, &c.eval_memo(l, vars, consts, memo)?);
                }
                acc
            }
            TermNode::Join(cs) => {
                let mut acc = cs[0].eval_memo(l, vars, consts, memo)?;
                for c in &cs[1..] {
                    acc = l.join(&acc, &c.eval_memo(l, vars, consts, memo)?);
                }
                acc
            }
        };
        memo.insert(key(self), v.clone());
        Ok(v)
    }

    /// Tree encoding: `{"var": i}` (1-based), `{"const": name}`,
    /// `{"meet": [...]}`, `{"join": [...]}`.
    pub fn to_json(&self) -> Value {
        match &*self.0 {
            TermNode::Var(i) => json!({ "var": i + 1 }),
            TermNode::Const(c) => json!({ "const": c }),
            TermNode::Meet(cs) => {
                json!({ "meet": cs.iter().map(|c| c.to_json()).collect::<Vec<_>>() })
            }
            TermNode::Join(cs) => {
                json!({ "join": cs.iter().map(|c| c.to_json()).collect::<Vec<_>>() })
            }
        }
    }

    /// Graph encoding with shared nodes listed once, children before parents:
    /// `{"nodes": [...], "root": k}` where composite nodes refer to earlier
    /// node positions.
    pub fn to_dag_json(&self) -> Value {
        fn go(t: &LatticeTerm, ids: &mut HashMap<usize, usize>, nodes: &mut Vec<Value>) -> usize {
            if let Some(&i) = ids.get(&key(t)) {
                return i;
            }
            let v = match &*t.0 {
                TermNode::Var(i) => json!({ "var": i + 1 }),
                TermNode::Const(c) => json!({ "const": c }),
                TermNode::Meet(cs) => {
                    json!({ "meet": cs.iter().map(|c| go(c, ids, nodes)).collect::<Vec<_>>() })
                }
                TermNode::Join(cs) => {
                    json!({ "join": cs.iter().map(|c| go(c, ids, nodes)).collect::<Vec<_>>() })
                }
            };
            nodes.push(v);
            ids.insert(key(t), nodes.len() - 1);
            nodes.len() - 1
        }
        let mut nodes = Vec::new();
        let root = go(self, &mut HashMap::new(), &mut nodes);
        json!({ "nodes": nodes, "root": root })
    }

    /// Inverse of [`LatticeTerm::to_json`]; also accepts the graph encoding.
    pub fn from_json(v: &Value) -> Result<LatticeTerm, LatticeError> {
        if let (Some(nodes), Some(root)) = (v.get("nodes").and_then(Value::as_array), v.get("root"))
        {
            let mut built: Vec<LatticeTerm> = Vec::with_capacity(nodes.len());
            for n in nodes {
                let t = Self::node_from_json(n, &mut |child| {
                    let i = child.as_u64().ok_or_else(|| bad_term(child))? as usize;
                    built.get(i).cloned().ok_or_else(|| bad_term(child))
                })?;
                built.push(t);
            }
            let r = root.as_u64().ok_or_else(|| bad_term(root))? as usize;
            return built.get(r).cloned().ok_or_else(|| bad_term(root));
        }
        Self::node_from_json(v, &mut Self::from_json)
    }

    fn node_from_json(
        v: &Value,
        child: &mut dyn FnMut(&Value) -> Result<LatticeTerm, LatticeError>,
    ) -> Result<LatticeTerm, LatticeError> {
        let obj = v
            .as_object()
            .filter(|o| o.len() == 1)
            .ok_or_else(|| bad_term(v))?;
        let (k, body) = obj.iter().next().unwrap();
        match k.as_str() {
            "var" => {
                let i = body
                    .as_u64()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| bad_term(v))?;
                Ok(LatticeTerm::var(i as usize - 1))
            }
            "const" => Ok(LatticeTerm::constant(
                body.as_str().ok_or_else(|| bad_term(v))?,
            )),
            "meet" | "join" => {
                let cs = body
                    .as_array()
                    .filter(|a| !a.is_empty())
                    .ok_or_else(|| bad_term(v))?;
                let cs = cs.iter().map(child).collect::<Result<Vec<_>, _>>()?;
                Ok(if k == "meet" {
                    LatticeTerm::meet_all(cs)
                } else {
                    LatticeTerm::join_all(cs)
                })
            }
            _ => Err(bad_term(v)),
        }
    }
}

fn bad_term(v: &Value) -> LatticeError {
    LatticeError::Parse(format!("malformed term {v}"))
}

impl fmt::Display for LatticeTerm {
    /// Infix form with `^` for meet and `v` for join. Exponentially large
    /// trees are abbreviated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tree_size() > 20_000 {
            return write!(f, "<term with {} shared nodes>", self.dag_size());
        }
        match &*self.0 {
            TermNode::Var(i) => write!(f, "x{}", i + 1),
            TermNode::Const(c) => f.write_str(c),
            TermNode::Meet(cs) | TermNode::Join(cs) => {
                let op = if matches!(&*self.0, TermNode::Meet(_)) {
                    " ^ "
                } else {
                    " v "
                };
                f.write_str("(")?;
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(op)?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BaseLattice;

    #[test]
    fn json_round_trip() {
        let t = LatticeTerm::var(0)
            .meet(&LatticeTerm::var(1))
            .join(&LatticeTerm::constant("a1"));
        let j = t.to_json();
        assert_eq!(
            j,
            json!({"join": [{"meet": [{"var": 1}, {"var": 2}]}, {"const": "a1"}]})
        );
        let back = LatticeTerm::from_json(&j).unwrap();
        assert_eq!(back.to_json(), j);
        let dag = LatticeTerm::from_json(&t.to_dag_json()).unwrap();
        assert_eq!(dag.to_json(), j);
        assert!(LatticeTerm::from_json(&json!({"var": 0})).is_err());
    }

    #[test]
    fn shared_nodes_stay_small() {
        let mut t = LatticeTerm::var(0);
        for _ in 0..70 {
            t = t.join(&t);
        }
        assert_eq!(t.dag_size(), 71);
        assert_eq!(t.tree_size(), u64::MAX);
        assert!(t.to_string().starts_with("<term"));
    }

    #[test]
    fn eval_and_errors() {
        let chain = BaseLattice::chain(3);
        let t = LatticeTerm::var(0).meet(&LatticeTerm::var(1));
        assert_eq!(t.eval(&chain, &[2, 1], &HashMap::new()).unwrap(), 1);
        assert_eq!(t.eval(&chain, &[2, 2], &HashMap::new()).unwrap(), 2);
        assert!(matches!(
            t.eval(&chain, &[2], &HashMap::new()),
            Err(LatticeError::ArityMismatch { .. })
        ));
        let c = LatticeTerm::constant("k");
        assert!(matches!(
            c.eval(&chain, &[], &HashMap::new()),
            Err(LatticeError::UnboundConstant(_))
        ));
        let env = HashMap::from([("k".to_string(), 1u32)]);
        assert_eq!(
            c.join(&LatticeTerm::var(0))
                .eval(&chain, &[0], &env)
                .unwrap(),
            1
        );
    }

    #[test]
    fn substitution() {
        let t = LatticeTerm::var(0).join(&LatticeTerm::var(1));
        let s = t.permute_vars(&[1, 0]);
        assert_eq!(s.to_string(), "(x2 v x1)");
        let u = t.substitute(&[
            LatticeTerm::var(2).meet(&LatticeTerm::var(0)),
            LatticeTerm::var(1),
        ]);
        assert_eq!(u.to_string(), "((x3 ^ x1) v x2)");
        assert_eq!(u.arity(), 3);
    }
}
