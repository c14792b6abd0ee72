#include "assc/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "assc/rng.hpp"

namespace assc {

namespace {

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& path, int line, int field, const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw ParseError(path, line, field, "expected a number, got '" + text + "'");
    }
    return value;
}

int parse_int(const std::string& path, int line, int field, const std::string& text) {
    int value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw ParseError(path, line, field, "expected an integer, got '" + text + "'");
    }
    return value;
}

// Parses "key=<int>" out of a header token.
int parse_keyed_int(const std::string& path, int line, int field, const std::string& token,
                    const std::string& key) {
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0) {
        throw ParseError(path, line, field, "expected '" + prefix + "<int>', got '" + token + "'");
    }
    return parse_int(path, line, field, token.substr(prefix.size()));
}

std::vector<std::string> header_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::string read_required_line(std::ifstream& in, const std::string& path, int line_no) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path, line_no, 1, "unexpected end of file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

Eigen::MatrixXd orthonormal_basis(int ambient_dim, int subspace_dim, Rng& rng) {
    Eigen::MatrixXd gaussian(ambient_dim, subspace_dim);
    for (int c = 0; c < subspace_dim; ++c) {
        for (int r = 0; r < ambient_dim; ++r) gaussian(r, c) = rng.gaussian();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
    return qr.householderQ() * Eigen::MatrixXd::Identity(ambient_dim, subspace_dim);
}

}  // namespace

void SubspaceSpec::validate() const {
    if (n_subspaces < 1 || subspace_dim < 1 || ambient_dim < 1 || points_per_subspace < 1) {
        throw ValidationError("all subspace counts must be >= 1");
    }
    if (subspace_dim > ambient_dim) {
        throw ValidationError("subspace_dim " + std::to_string(subspace_dim) +
                              " exceeds ambient_dim " + std::to_string(ambient_dim));
    }
    if (perturbation.has_value() && *perturbation < 0.0) {
        throw ValidationError("perturbation bound must be >= 0");
    }
}

void validate_unit_columns(const Eigen::MatrixXd& values, double tol) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        if (!values.col(j).allFinite()) {
            throw ValidationError("column " + std::to_string(j + 1) + " has a non-finite entry");
        }
        const double norm = values.col(j).norm();
        if (std::abs(norm - 1.0) > tol) {
            throw ValidationError("column " + std::to_string(j + 1) + " has l2 norm " +
                                  std::to_string(norm) + ", expected 1");
        }
    }
}

std::pair<DataMatrix, SubspaceModel> generate(const SubspaceSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    const int n_points = spec.total_points();
    DataMatrix data;
    data.values.resize(spec.ambient_dim, n_points);
    SubspaceModel model;
    model.bases.reserve(spec.n_subspaces);
    model.labels.resize(n_points);

    Eigen::VectorXd weights(spec.subspace_dim);
    int col = 0;
    for (int s = 0; s < spec.n_subspaces; ++s) {
        model.bases.push_back(orthonormal_basis(spec.ambient_dim, spec.subspace_dim, rng));
        const Eigen::MatrixXd& basis = model.bases.back();
        for (int p = 0; p < spec.points_per_subspace; ++p, ++col) {
            double norm = 0.0;
            Eigen::VectorXd point;
            do {
                for (int k = 0; k < spec.subspace_dim; ++k) weights(k) = rng.gaussian();
                point = basis * weights;
                norm = point.norm();
            } while (norm == 0.0);
            data.values.col(col) = point / norm;
            model.labels[col] = s + 1;
        }
    }
    return {std::move(data), std::move(model)};
}

Eigen::VectorXd perturb_column(const Eigen::VectorXd& point, double shift, bool renormalize) {
    if (shift == 0.0) return point;
    Eigen::VectorXd shifted = point.array() + shift;
    if (renormalize) {
        const double norm = shifted.norm();
        if (norm == 0.0) {
            throw NumericError("perturbed point collapsed to the zero vector");
        }
        shifted /= norm;
    }
    return shifted;
}

DataMatrix perturb(const DataMatrix& data, double q, std::uint64_t seed, bool renormalize) {
    if (q < 0.0) throw ValidationError("perturbation bound must be >= 0");
    Rng rng(seed);
    DataMatrix out;
    out.values.resize(data.rows(), data.cols());
    for (int j = 0; j < data.cols(); ++j) {
        out.values.col(j) = perturb_column(data.values.col(j), rng.uniform(0.0, q), renormalize);
    }
    return out;
}

void save(const DataMatrix& data, const SubspaceModel& model,
          const std::string& dataset_path, const std::string& bases_path) {
    const int n_subspaces = static_cast<int>(model.bases.size());
    std::string text;
    text += "# D=" + std::to_string(data.rows()) + " N=" + std::to_string(data.cols()) +
            " n=" + std::to_string(n_subspaces) + "\n";
    for (int j = 0; j < data.cols(); ++j) {
        if (j > 0) text += ',';
        text += std::to_string(model.labels.at(j));
    }
    text += '\n';
    for (int r = 0; r < data.rows(); ++r) {
        for (int j = 0; j < data.cols(); ++j) {
            if (j > 0) text += ',';
            append_double(text, data.values(r, j));
        }
        text += '\n';
    }
    std::ofstream out(dataset_path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + dataset_path);
    out.close();

    if (bases_path.empty()) return;
    std::string sidecar;
    sidecar += "# D=" + std::to_string(data.rows()) + " n=" + std::to_string(n_subspaces) + "\n";
    for (int s = 0; s < n_subspaces; ++s) {
        const Eigen::MatrixXd& basis = model.bases[s];
        sidecar += "# subspace " + std::to_string(s + 1) +
                   " d=" + std::to_string(basis.cols()) + "\n";
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            for (Eigen::Index c = 0; c < basis.cols(); ++c) {
                if (c > 0) sidecar += ',';
                append_double(sidecar, basis(r, c));
            }
            sidecar += '\n';
        }
    }
    std::ofstream side(bases_path, std::ios::binary);
    if (!side || !(side << sidecar)) throw IoError("cannot write " + bases_path);
}

std::pair<DataMatrix, SubspaceModel> load(const std::string& dataset_path,
                                          const std::string& bases_path) {
    std::ifstream in(dataset_path, std::ios::binary);
    if (!in) throw IoError("cannot read " + dataset_path);

    int line_no = 1;
    const auto header = header_tokens(read_required_line(in, dataset_path, line_no));
    if (header.size() != 4 || header[0] != "#") {
        throw ParseError(dataset_path, line_no, 1, "expected '# D=<int> N=<int> n=<int>'");
    }
    const int dim = parse_keyed_int(dataset_path, line_no, 2, header[1], "D");
    const int n_points = parse_keyed_int(dataset_path, line_no, 3, header[2], "N");
    const int n_subspaces = parse_keyed_int(dataset_path, line_no, 4, header[3], "n");
    if (dim < 1 || n_points < 1 || n_subspaces < 1) {
        throw ValidationError(dataset_path + ": header counts must be >= 1");
    }

    ++line_no;
    const auto label_fields = split_fields(read_required_line(in, dataset_path, line_no));
    if (static_cast<int>(label_fields.size()) != n_points) {
        throw ParseError(dataset_path, line_no, static_cast<int>(label_fields.size()),
                         "expected " + std::to_string(n_points) + " labels, got " +
                             std::to_string(label_fields.size()));
    }
    SubspaceModel model;
    model.labels.resize(n_points);
    for (int j = 0; j < n_points; ++j) {
        const int label = parse_int(dataset_path, line_no, j + 1, label_fields[j]);
        if (label < 1 || label > n_subspaces) {
            throw ValidationError(dataset_path + ": label " + std::to_string(label) +
                                  " outside [1.." + std::to_string(n_subspaces) + "]");
        }
        model.labels[j] = label;
    }
    std::vector<int> counts(n_subspaces, 0);
    for (int label : model.labels) ++counts[label - 1];
    for (int s = 0; s < n_subspaces; ++s) {
        if (counts[s] == 0) {
            throw ValidationError(dataset_path + ": subspace " + std::to_string(s + 1) +
                                  " has no points");
        }
    }

    DataMatrix data;
    data.values.resize(dim, n_points);
    for (int r = 0; r < dim; ++r) {
        ++line_no;
        const auto fields = split_fields(read_required_line(in, dataset_path, line_no));
        if (static_cast<int>(fields.size()) != n_points) {
            throw ParseError(dataset_path, line_no, static_cast<int>(fields.size()),
                             "expected " + std::to_string(n_points) + " values, got " +
                                 std::to_string(fields.size()));
        }
        for (int j = 0; j < n_points; ++j) {
            data.values(r, j) = parse_double(dataset_path, line_no, j + 1, fields[j]);
        }
    }
    validate_unit_columns(data.values);

    if (!bases_path.empty()) {
        std::ifstream side(bases_path, std::ios::binary);
        if (!side) throw IoError("cannot read " + bases_path);
        int side_line = 1;
        const auto side_header = header_tokens(read_required_line(side, bases_path, side_line));
        if (side_header.size() != 3 || side_header[0] != "#") {
            throw ParseError(bases_path, side_line, 1, "expected '# D=<int> n=<int>'");
        }
        const int side_dim = parse_keyed_int(bases_path, side_line, 2, side_header[1], "D");
        const int side_n = parse_keyed_int(bases_path, side_line, 3, side_header[2], "n");
        if (side_dim != dim || side_n != n_subspaces) {
            throw ValidationError(bases_path + ": sidecar header disagrees with dataset header");
        }
        for (int s = 0; s < n_subspaces; ++s) {
            ++side_line;
            const auto block = header_tokens(read_required_line(side, bases_path, side_line));
            if (block.size() != 4 || block[0] != "#" || block[1] != "subspace") {
                throw ParseError(bases_path, side_line, 1, "expected '# subspace <i> d=<int>'");
            }
            const int index = parse_int(bases_path, side_line, 3, block[2]);
            if (index != s + 1) {
                throw ParseError(bases_path, side_line, 3,
                                 "expected subspace " + std::to_string(s + 1));
            }
            const int sub_dim = parse_keyed_int(bases_path, side_line, 4, block[3], "d");
            if (sub_dim < 1 || sub_dim > dim) {
                throw ValidationError(bases_path + ": subspace dimension " +
                                      std::to_string(sub_dim) + " outside [1.." +
                                      std::to_string(dim) + "]");
            }
            Eigen::MatrixXd basis(dim, sub_dim);
            for (int r = 0; r < dim; ++r) {
                ++side_line;
                const auto fields = split_fields(read_required_line(side, bases_path, side_line));
                if (static_cast<int>(fields.size()) != sub_dim) {
                    throw ParseError(bases_path, side_line, static_cast<int>(fields.size()),
                                     "expected " + std::to_string(sub_dim) + " values, got " +
                                         std::to_string(fields.size()));
                }
                for (int c = 0; c < sub_dim; ++c) {
                    basis(r, c) = parse_double(bases_path, side_line, c + 1, fields[c]);
                }
            }
            const Eigen::MatrixXd gram = basis.transpose() * basis;
            if ((gram - Eigen::MatrixXd::Identity(sub_dim, sub_dim)).cwiseAbs().maxCoeff() >
                1e-10) {
                throw ValidationError(bases_path + ": subspace " + std::to_string(s + 1) +
                                      " basis is not orthonormal");
            }
            model.bases.push_back(std::move(basis));
        }
    }
    return {std::move(data), std::move(model)};
}

}  // namespace assc
