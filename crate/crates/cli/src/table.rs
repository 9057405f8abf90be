/// One cell of an output table.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
    Text(String),
    Missing,
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Missing, Value::Float)
    }
}

/// Rows under named columns. The last column of every command table is
/// `error`, empty on success.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Set when some row hit a numerical (non-convergence) failure.
    pub numerical_failure: bool,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        let mut columns = columns.to_vec();
        columns.push("error");
        Table {
            columns,
            rows: Vec::new(),
            numerical_failure: false,
        }
    }

    /// Appends a successful row; `values` excludes the error cell.
    pub fn push(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len() + 1, self.columns.len());
        let mut row = values;
        row.push(Value::Text(String::new()));
        self.rows.push(row);
    }

    /// Appends a failed row: the leading `key` cells, blanks, and the error.
    pub fn push_error(&mut self, key: Vec<Value>, err: &monopath_core::Error) {
        self.numerical_failure |= err.is_numerical();
        let mut row = key;
        row.resize(self.columns.len() - 1, Value::Missing);
        row.push(Value::Text(err.to_string()));
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }
}
