//! Parameter grids written as `a=1,2;b=1/2,3;c=2;x=0.1,0.5`.

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub x: Vec<String>,
}

fn list(values: &[&str]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

impl Default for Grid {
    /// Small integers and half-integers, where one side or the other often
    /// terminates.
    fn default() -> Self {
        Grid {
            a: list(&["-3", "-2", "-1", "-1/2", "1/2", "1", "2", "3"]),
            b: list(&["-2", "-1/2", "1/2", "1", "2", "5/2"]),
            c: list(&["1/2", "1", "3/2", "2", "3"]),
            x: list(&["0.1", "0.3", "0.5", "0.7", "0.9"]),
        }
    }
}

impl Grid {
    pub fn parse(text: &str) -> Result<Grid, CliError> {
        let mut grid = Grid { a: Vec::new(), b: Vec::new(), c: Vec::new(), x: Vec::new() };
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, values) = part
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("grid entry {part:?} is not name=values")))?;
            let slot = match name.trim() {
                "a" => &mut grid.a,
                "b" => &mut grid.b,
                "c" => &mut grid.c,
                "x" => &mut grid.x,
                other => return Err(CliError::Usage(format!("unknown grid axis {other:?}"))),
            };
            if !slot.is_empty() {
                return Err(CliError::Usage(format!("grid axis {} given twice", name.trim())));
            }
            *slot = values.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
        }
        for (name, axis) in [("a", &grid.a), ("b", &grid.b), ("c", &grid.c), ("x", &grid.x)] {
            if axis.is_empty() {
                return Err(CliError::Usage(format!("grid axis {name} has no values")));
            }
        }
        Ok(grid)
    }

    /// Every `(a, b, c, x)`, with `x` varying fastest.
    pub fn points(&self) -> impl Iterator<Item = (&str, &str, &str, &str)> + '_ {
        self.a.iter().flat_map(move |a| {
            self.b.iter().flat_map(move |b| {
                self.c
                    .iter()
                    .flat_map(move |c| self.x.iter().map(move |x| (a.as_str(), b.as_str(), c.as_str(), x.as_str())))
            })
        })
    }

    pub fn len(&self) -> usize {
        self.a.len() * self.b.len() * self.c.len() * self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
