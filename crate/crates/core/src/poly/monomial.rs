use std::fmt;

/// Exponent vector. Slot 0 is ε, slots `1..=r` are `x1..xr`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// `x_var^exp` (use `var = 0` for ε).
    pub fn var_power(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn epsilon_exp(&self) -> u32 {
        self.0[0]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Total degree in `x1..xr`, ignoring ε.
    pub fn x_degree(&self) -> u64 {
        self.0[1..].iter().map(|&e| u64::from(e)).sum()
    }

    pub fn with_exp(&self, var: usize, exp: u32) -> Self {
        let mut m = self.clone();
        m.0[var] = exp;
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn without_epsilon(&self) -> Monomial {
        self.with_exp(0, 0)
    }

    pub fn display_with<'a>(&'a self, names: &'a VarNames) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            names,
            sep: "*",
        }
    }
}

/// Variable naming: `x, y, z` for up to three legs, `x1..xr` beyond, `e` for ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    pub fn standard(nvars: usize) -> Self {
        let r = nvars.saturating_sub(1);
        let mut names = vec!["e".to_string()];
        if r <= 3 {
            names.extend(["x", "y", "z"].iter().take(r).map(|s| s.to_string()));
        } else {
            names.extend((1..=r).map(|i| format!("x{i}")));
        }
        VarNames(names)
    }

    /// Custom names; slot 0 is ε.
    pub fn from_names(names: Vec<String>) -> Self {
        VarNames(names)
    }

    /// Same layout with the x-variables in upper case.
    pub fn uppercase_x(&self) -> Self {
        let mut names = self.0.clone();
        for n in names.iter_mut().skip(1) {
            *n = n.to_uppercase();
        }
        VarNames(names)
    }

    pub fn name(&self, var: usize) -> &str {
        &self.0[var]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Names of `x1..xr` (without ε).
    pub fn x_names(&self) -> &[String] {
        &self.0[1..]
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    names: &'a VarNames,
    sep: &'a str,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return write!(f, "1");
        }
        // x-variables first, ε last, matching the way families are written.
        let order = (1..self.monomial.nvars()).chain(std::iter::once(0));
        let mut first = true;
        for v in order {
            let e = self.monomial.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", self.sep)?;
            }
            first = false;
            match e {
                1 => write!(f, "{}", self.names.name(v))?,
                _ => write!(f, "{}^{}", self.names.name(v), e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::standard(self.nvars());
        write!(f, "{}", self.display_with(&names))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
