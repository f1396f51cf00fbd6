#include "graphmine/gnn.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <vector>

#include "graphmine/rng.hpp"
#include "graphmine/util.hpp"

namespace graphmine {

namespace {

double glorot_limit(int fan_in, int fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

// One shared draw order (row-major per tensor, W1 then W2 then w_out) keeps
// initialization reproducible across refactors.
void fill_uniform(Rng& rng, Matrix& w, double a) {
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = 0; j < w.cols(); ++j) {
      w(i, j) = (2.0 * rng.uniform() - 1.0) * a;
    }
  }
}

double stable_sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

GnnModel init_model(const ModelDims& dims, std::uint64_t seed) {
  if (dims.input_dim < 1 || dims.hidden_dim < 1 || dims.embedding_dim < 1)
    throw Precondition("model dims must be positive");
  GnnModel m;
  m.dims = dims;
  m.init_seed = seed;
  m.w1.resize(dims.hidden_dim, dims.input_dim);
  m.b1 = Vector::Zero(dims.hidden_dim);
  m.w2.resize(dims.embedding_dim, dims.hidden_dim);
  m.b2 = Vector::Zero(dims.embedding_dim);
  m.w_out.resize(dims.embedding_dim);
  m.b_out = 0.0;

  Rng rng(seed);
  fill_uniform(rng, m.w1, glorot_limit(dims.input_dim, dims.hidden_dim));
  fill_uniform(rng, m.w2, glorot_limit(dims.hidden_dim, dims.embedding_dim));
  const double a_out = glorot_limit(dims.embedding_dim, 1);
  for (Index i = 0; i < m.w_out.size(); ++i) {
    m.w_out[i] = (2.0 * rng.uniform() - 1.0) * a_out;
  }
  return m;
}

Matrix aggregate(const SampleGraph& g, const Matrix& x) {
  if (x.rows() != g.n_nodes)
    throw DimensionMismatch("aggregate: feature rows != graph nodes");
  if (g.raw_rowsum.empty())
    throw Precondition("graph is not normalized");
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < g.n_nodes; ++i) {
    for (const auto& e : g.adjacency[static_cast<std::size_t>(i)]) {
      out.row(i) += e.norm * x.row(e.neighbor);
    }
  }
  return out;
}

Matrix aggregate_transpose(const SampleGraph& g, const Matrix& x) {
  if (x.rows() != g.n_nodes)
    throw DimensionMismatch("aggregate_transpose: feature rows != graph nodes");
  if (g.raw_rowsum.empty())
    throw Precondition("graph is not normalized");
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < g.n_nodes; ++i) {
    for (const auto& e : g.adjacency[static_cast<std::size_t>(i)]) {
      out.row(i) +=
          (e.raw / g.raw_rowsum[static_cast<std::size_t>(e.neighbor)]) * x.row(e.neighbor);
    }
  }
  return out;
}

ForwardTrace forward(const GnnModel& m, const SampleGraph& g, const Matrix& x) {
  if (x.cols() != m.dims.input_dim)
    throw DimensionMismatch("forward: feature columns != model input_dim");
  ForwardTrace t;
  t.h0 = x;
  t.agg1 = aggregate(g, t.h0);
  t.z1 = (t.agg1 * m.w1.transpose()).rowwise() + m.b1.transpose();
  t.h1 = t.z1.cwiseMax(0.0);
  t.agg2 = aggregate(g, t.h1);
  t.z2 = (t.agg2 * m.w2.transpose()).rowwise() + m.b2.transpose();
  t.logits = t.z2 * m.w_out;
  t.logits.array() += m.b_out;
  t.predictions.resize(t.logits.size());
  for (Index i = 0; i < t.logits.size(); ++i) {
    t.predictions[i] = stable_sigmoid(t.logits[i]);
  }
  return t;
}

Gradients backward(const GnnModel& m, const SampleGraph& g, const ForwardTrace& t,
                   const Vector& d_predictions, const Matrix& d_embeddings) {
  if (d_predictions.size() != t.predictions.size())
    throw DimensionMismatch("backward: gradient length != prediction length");

  Gradients grad;

  // head: dL/dlogit = dL/dpred * pred * (1 - pred)
  Vector dlogits =
      d_predictions.array() * t.predictions.array() * (1.0 - t.predictions.array());
  grad.w_out = t.z2.transpose() * dlogits;
  grad.b_out = dlogits.sum();

  Matrix dz2 = dlogits * m.w_out.transpose();
  if (d_embeddings.size() != 0) {
    if (d_embeddings.rows() != dz2.rows() || d_embeddings.cols() != dz2.cols())
      throw DimensionMismatch("backward: embedding gradient shape mismatch");
    dz2 += d_embeddings;
  }
  grad.embeddings = dz2;

  grad.w2 = dz2.transpose() * t.agg2;
  grad.b2 = dz2.colwise().sum().transpose();

  const Matrix dagg2 = dz2 * m.w2;
  const Matrix dh1 = aggregate_transpose(g, dagg2);
  const Matrix dz1 = (t.z1.array() > 0.0).select(dh1, 0.0);

  grad.w1 = dz1.transpose() * t.agg1;
  grad.b1 = dz1.colwise().sum().transpose();
  return grad;
}

namespace {

std::string hexfloat(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double parse_hexfloat(const std::string& s, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw Error(ErrorKind::Runtime, "CheckpointError",
                "bad value in checkpoint at " + where);
  return v;
}

// Checksum over the parameter bytes in a fixed order, independent of the
// text formatting.
std::uint64_t model_checksum(const GnnModel& m) {
  std::vector<unsigned char> bytes;
  auto put = [&bytes](double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof(u));
    for (int b = 0; b < 8; ++b) {
      bytes.push_back(static_cast<unsigned char>((u >> (8 * b)) & 0xff));
    }
  };
  for (Index i = 0; i < m.w1.rows(); ++i)
    for (Index j = 0; j < m.w1.cols(); ++j) put(m.w1(i, j));
  for (Index i = 0; i < m.b1.size(); ++i) put(m.b1[i]);
  for (Index i = 0; i < m.w2.rows(); ++i)
    for (Index j = 0; j < m.w2.cols(); ++j) put(m.w2(i, j));
  for (Index i = 0; i < m.b2.size(); ++i) put(m.b2[i]);
  for (Index i = 0; i < m.w_out.size(); ++i) put(m.w_out[i]);
  put(m.b_out);
  return fnv1a64(bytes.data(), bytes.size());
}

}  // namespace

void save_model(const GnnModel& m, const std::string& path) {
  std::ostringstream out;
  out << "graphmine-model v1\n";
  out << "dims " << m.dims.input_dim << ' ' << m.dims.hidden_dim << ' '
      << m.dims.embedding_dim << '\n';
  out << "seed " << m.init_seed << '\n';
  auto dump_matrix = [&out](const char* name, const Matrix& w) {
    out << name;
    for (Index i = 0; i < w.rows(); ++i)
      for (Index j = 0; j < w.cols(); ++j) out << ' ' << hexfloat(w(i, j));
    out << '\n';
  };
  auto dump_vector = [&out](const char* name, const Vector& v) {
    out << name;
    for (Index i = 0; i < v.size(); ++i) out << ' ' << hexfloat(v[i]);
    out << '\n';
  };
  dump_matrix("w1", m.w1);
  dump_vector("b1", m.b1);
  dump_matrix("w2", m.w2);
  dump_vector("b2", m.b2);
  dump_vector("w_out", m.w_out);
  out << "b_out " << hexfloat(m.b_out) << '\n';
  out << "checksum " << hex16(model_checksum(m)) << '\n';
  write_file(path, out.str());
}

GnnModel load_model(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;

  auto fail = [&path](const std::string& why) -> Error {
    return Error(ErrorKind::Runtime, "CheckpointError", path + ": " + why);
  };

  if (!std::getline(in, line) || line != "graphmine-model v1")
    throw fail("unrecognized header");

  GnnModel m;
  {
    if (!std::getline(in, line)) throw fail("missing dims");
    std::istringstream ls(line);
    std::string tag;
    ls >> tag >> m.dims.input_dim >> m.dims.hidden_dim >> m.dims.embedding_dim;
    if (tag != "dims" || !ls || m.dims.input_dim < 1 || m.dims.hidden_dim < 1 ||
        m.dims.embedding_dim < 1)
      throw fail("bad dims line");
  }
  {
    if (!std::getline(in, line)) throw fail("missing seed");
    std::istringstream ls(line);
    std::string tag;
    ls >> tag >> m.init_seed;
    if (tag != "seed" || !ls) throw fail("bad seed line");
  }

  auto read_values = [&](const char* name, Index count) {
    if (!std::getline(in, line)) throw fail(std::string("missing ") + name);
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != name) throw fail(std::string("expected ") + name);
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(count));
    std::string tok;
    while (ls >> tok) vals.push_back(parse_hexfloat(tok, name));
    if (static_cast<Index>(vals.size()) != count)
      throw fail(std::string("wrong value count for ") + name);
    return vals;
  };

  const auto& d = m.dims;
  auto w1v = read_values("w1", static_cast<Index>(d.hidden_dim) * d.input_dim);
  m.w1.resize(d.hidden_dim, d.input_dim);
  for (Index i = 0; i < m.w1.rows(); ++i)
    for (Index j = 0; j < m.w1.cols(); ++j)
      m.w1(i, j) = w1v[static_cast<std::size_t>(i * d.input_dim + j)];

  auto b1v = read_values("b1", d.hidden_dim);
  m.b1.resize(d.hidden_dim);
  for (Index i = 0; i < m.b1.size(); ++i) m.b1[i] = b1v[static_cast<std::size_t>(i)];

  auto w2v = read_values("w2", static_cast<Index>(d.embedding_dim) * d.hidden_dim);
  m.w2.resize(d.embedding_dim, d.hidden_dim);
  for (Index i = 0; i < m.w2.rows(); ++i)
    for (Index j = 0; j < m.w2.cols(); ++j)
      m.w2(i, j) = w2v[static_cast<std::size_t>(i * d.hidden_dim + j)];

  auto b2v = read_values("b2", d.embedding_dim);
  m.b2.resize(d.embedding_dim);
  for (Index i = 0; i < m.b2.size(); ++i) m.b2[i] = b2v[static_cast<std::size_t>(i)];

  auto wov = read_values("w_out", d.embedding_dim);
  m.w_out.resize(d.embedding_dim);
  for (Index i = 0; i < m.w_out.size(); ++i)
    m.w_out[i] = wov[static_cast<std::size_t>(i)];

  {
    if (!std::getline(in, line)) throw fail("missing b_out");
    std::istringstream ls(line);
    std::string tag, tok;
    ls >> tag >> tok;
    if (tag != "b_out" || tok.empty()) throw fail("bad b_out line");
    m.b_out = parse_hexfloat(tok, "b_out");
  }
  {
    if (!std::getline(in, line)) throw fail("missing checksum");
    std::istringstream ls(line);
    std::string tag, tok;
    ls >> tag >> tok;
    if (tag != "checksum") throw fail("bad checksum line");
    if (tok != hex16(model_checksum(m)))
      throw Error(ErrorKind::Runtime, "ChecksumMismatch",
                  path + ": checkpoint checksum does not match contents");
  }
  return m;
}

}  // namespace graphmine
