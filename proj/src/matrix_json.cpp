#include "traceineq/matrix_json.hpp"

#include <cmath>
#include <fstream>

namespace traceineq {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row_re = nlohmann::json::array();
    nlohmann::json row_im = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row_re.push_back(m(i, j).real());
      row_im.push_back(m(i, j).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw std::invalid_argument("matrix_from_json: object must carry dim, re, im");
  }
  const int dim = j.at("dim").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (dim < 1 || static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim) {
    throw std::invalid_argument("matrix_from_json: row count does not match dim");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(re[i].size()) != dim || static_cast<int>(im[i].size()) != dim) {
      throw std::invalid_argument("matrix_from_json: column count does not match dim");
    }
    for (int jcol = 0; jcol < dim; ++jcol) {
      const double x = re[i][jcol].get<double>();
      const double y = im[i][jcol].get<double>();
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("matrix_from_json: non-finite entry");
      }
      m(i, jcol) = Complex(x, y);
    }
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_matrix_file: cannot open " + path);
  }
  nlohmann::json j;
  in >> j;
  return matrix_from_json(j);
}

}  // namespace traceineq
