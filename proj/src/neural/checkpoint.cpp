#include "camarl/neural/checkpoint.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "camarl/errors.hpp"

namespace camarl::neural {

namespace {

constexpr const char* kMagic = "camarl-mlp";
constexpr int kVersion = 1;

std::string hex(double value) {
    std::ostringstream s;
    s << std::hexfloat << value;
    return s.str();
}

double read_real(std::istream& in) {
    std::string token;
    if (!(in >> token)) throw InvalidInput("checkpoint truncated");
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) throw InvalidInput("bad real '" + token + "' in checkpoint");
    return value;
}

void expect(std::istream& in, const std::string& keyword) {
    std::string token;
    if (!(in >> token) || token != keyword) {
        throw InvalidInput("checkpoint: expected '" + keyword + "', found '" + token + "'");
    }
}

template <typename T>
T read_value(std::istream& in, const char* what) {
    T value{};
    if (!(in >> value)) throw InvalidInput(std::string("checkpoint: cannot read ") + what);
    return value;
}

}  // namespace

void save_parameters(const MlpParameters& params, std::ostream& out) {
    validate(params);
    out << kMagic << ' ' << kVersion << '\n';
    out << "layers " << params.layer_sizes.size();
    for (int s : params.layer_sizes) out << ' ' << s;
    out << "\nactivations";
    for (Activation a : params.activations) out << ' ' << to_string(a);
    out << '\n';
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        const auto& w = params.weights[l];
        out << "weight " << l << ' ' << w.rows() << ' ' << w.cols() << '\n';
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                out << (c == 0 ? "" : " ") << hex(w(r, c));
            }
            out << '\n';
        }
        const auto& b = params.biases[l];
        out << "bias " << l << ' ' << b.size() << '\n';
        for (Eigen::Index i = 0; i < b.size(); ++i) out << (i == 0 ? "" : " ") << hex(b(i));
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing network checkpoint");
}

MlpParameters load_parameters(std::istream& in) {
    expect(in, kMagic);
    if (read_value<int>(in, "version") != kVersion) throw InvalidInput("unsupported checkpoint version");
    MlpParameters params;
    expect(in, "layers");
    const auto count = read_value<std::size_t>(in, "layer count");
    if (count < 2 || count > 64) throw InvalidInput("checkpoint: implausible layer count");
    for (std::size_t i = 0; i < count; ++i) params.layer_sizes.push_back(read_value<int>(in, "layer size"));
    expect(in, "activations");
    for (std::size_t i = 0; i + 1 < count; ++i) {
        params.activations.push_back(activation_from_string(read_value<std::string>(in, "activation")));
    }
    for (std::size_t l = 0; l + 1 < count; ++l) {
        expect(in, "weight");
        if (read_value<std::size_t>(in, "layer index") != l) throw InvalidInput("checkpoint: layers out of order");
        const auto rows = read_value<Eigen::Index>(in, "rows");
        const auto cols = read_value<Eigen::Index>(in, "cols");
        if (rows != params.layer_sizes[l + 1] || cols != params.layer_sizes[l]) {
            throw InvalidInput("checkpoint: weight shape disagrees with layer sizes");
        }
        Eigen::MatrixXd w(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) w(r, c) = read_real(in);
        }
        expect(in, "bias");
        if (read_value<std::size_t>(in, "layer index") != l) throw InvalidInput("checkpoint: layers out of order");
        const auto size = read_value<Eigen::Index>(in, "bias size");
        if (size != rows) throw InvalidInput("checkpoint: bias size disagrees with layer sizes");
        Eigen::VectorXd b(size);
        for (Eigen::Index i = 0; i < size; ++i) b(i) = read_real(in);
        params.weights.push_back(std::move(w));
        params.biases.push_back(std::move(b));
    }
    validate(params);
    return params;
}

void save_parameters(const MlpParameters& params, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    save_parameters(params, out);
}

MlpParameters load_parameters(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    return load_parameters(in);
}

}  // namespace camarl::neural
