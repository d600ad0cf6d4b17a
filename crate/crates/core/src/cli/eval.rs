//! Bottom-up evaluation of parsed expressions.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use super::parse::{Expr, ExprKind, Span, UnaryOp};
use crate::catalogue::make;
use crate::dirichlet::{
    derivative, dirichlet_inv_with_epsilon, dirichlet_mul, dirichlet_pow, point_add, read_csv,
    read_json, scalar_mul, ArithFn,
};
use crate::error::Error;
use crate::numerics::{Backend, Coeff, DEFAULT_EPSILON};
use crate::sieve::SpfSieve;
use crate::transcend::{dexp, dlog, psi, psi_inv};

pub struct EvalContext {
    pub sieve: SpfSieve,
    /// Threshold for treating a float `a(1)` as zero in `inv`.
    pub eps: f64,
}

impl EvalContext {
    pub fn new(bound: usize) -> Result<Self, Error> {
        Ok(EvalContext {
            sieve: SpfSieve::new(bound)?,
            eps: DEFAULT_EPSILON,
        })
    }

    pub fn bound(&self) -> usize {
        self.sieve.bound()
    }
}

/// A library error tagged with the expression node that raised it.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub span: Span,
    pub node: String,
    pub error: Error,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (in `{}` at {}..{})",
            self.error, self.node, self.span.start, self.span.end
        )
    }
}

impl std::error::Error for EvalError {}

fn tag(e: &Expr) -> impl Fn(Error) -> EvalError + '_ {
    move |error| EvalError {
        span: e.span.clone(),
        node: e.to_string(),
        error,
    }
}

/// Rejects expressions the backend cannot represent before any work is done.
pub fn check_backend(e: &Expr, backend: Backend) -> Result<(), EvalError> {
    if backend == Backend::Complex {
        return Ok(());
    }
    let mut offending = None;
    e.walk(&mut |node| {
        let float_only = match &node.kind {
            ExprKind::Named(n) => n.requires_float(),
            ExprKind::Unary(UnaryOp::Deriv, _) => true,
            _ => false,
        };
        if float_only && offending.is_none() {
            offending = Some(node);
        }
    });
    match offending {
        Some(node) => Err(tag(node)(Error::UnsupportedBackend {
            operation: format!("`{node}` (use --backend complex)"),
            backend: backend.name(),
        })),
        None => Ok(()),
    }
}

/// Loads a function table from CSV, or JSON when the extension is `.json`.
pub fn load_function<C: Coeff>(path: &Path) -> Result<ArithFn<C>, Error> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let reader = BufReader::new(file);
    if path.extension().is_some_and(|ext| ext == "json") {
        read_json(reader)
    } else {
        read_csv(reader)
    }
}

pub fn eval_expr<C: Coeff>(e: &Expr, ctx: &EvalContext) -> Result<ArithFn<C>, EvalError> {
    check_backend(e, C::BACKEND)?;
    eval_node(e, ctx)
}

fn eval_node<C: Coeff>(e: &Expr, ctx: &EvalContext) -> Result<ArithFn<C>, EvalError> {
    let err = tag(e);
    match &e.kind {
        ExprKind::Named(name) => make(name, &ctx.sieve).map_err(err),
        ExprKind::File(path) => {
            let f = load_function(Path::new(path)).map_err(&err)?;
            if f.bound() != ctx.bound() {
                return Err(err(Error::BoundMismatch {
                    left: f.bound(),
                    right: ctx.bound(),
                }));
            }
            Ok(f)
        }
        ExprKind::Add(a, b) => point_add(&eval_node(a, ctx)?, &eval_node(b, ctx)?).map_err(err),
        ExprKind::Mul(a, b) => {
            dirichlet_mul(&eval_node(a, ctx)?, &eval_node(b, ctx)?).map_err(err)
        }
        ExprKind::Scalar(r, a) => Ok(scalar_mul(&C::from_rational(r), &eval_node(a, ctx)?)),
        ExprKind::Pow(a, k) => dirichlet_pow(&eval_node(a, ctx)?, *k).map_err(err),
        ExprKind::Unary(op, a) => {
            let v = eval_node::<C>(a, ctx)?;
            match op {
                UnaryOp::Inv => dirichlet_inv_with_epsilon(&v, ctx.eps),
                UnaryOp::Log => dlog(&v),
                UnaryOp::Exp => dexp(&v),
                UnaryOp::Psi => psi(&v),
                UnaryOp::PsiInv => psi_inv(&v),
                UnaryOp::Deriv => derivative(&v),
            }
            .map_err(err)
        }
    }
}
