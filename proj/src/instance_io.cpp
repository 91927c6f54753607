#include "irl1/error.hpp"
#include "irl1/problem.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace irl1 {

namespace {

constexpr std::array<char, 4> kMagic = {'I', 'R', 'L', '1'};

Error io_error(const std::string &what) { return Error(ErrorKind::Io, what); }

template <typename T> void put_le(std::ostream &out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char *>(bytes.data()), sizeof(T));
}

template <typename T> T get_le(std::istream &in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char *>(bytes.data()), sizeof(T)))
    throw io_error("instance file is truncated");
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

std::uint32_t checked_u32(Eigen::Index v) {
  if (v < 0 || v > static_cast<Eigen::Index>(
                       std::numeric_limits<std::uint32_t>::max()))
    throw argument_error("instance dimension does not fit in u32");
  return static_cast<std::uint32_t>(v);
}

} // namespace

void save_instance_binary(const ProblemInstance &p, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw io_error("cannot open '" + path + "' for writing");
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, checked_u32(p.rows()));
  put_le<std::uint32_t>(out, checked_u32(p.cols()));
  const Eigen::MatrixXd &A = p.A();
  for (Eigen::Index k = 0; k < A.size(); ++k)
    put_le<double>(out, A.data()[k]);
  for (Eigen::Index i = 0; i < p.b().size(); ++i)
    put_le<double>(out, p.b()[i]);
  if (!out)
    throw io_error("write to '" + path + "' failed");
}

LeastSquaresData load_instance_binary(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw io_error("cannot open '" + path + "'");
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw io_error("'" + path + "' is not an IRL1 instance file");
  const auto m = static_cast<Eigen::Index>(get_le<std::uint32_t>(in));
  const auto n = static_cast<Eigen::Index>(get_le<std::uint32_t>(in));
  if (m == 0 || n == 0)
    throw io_error("instance file declares an empty matrix");
  LeastSquaresData data{Eigen::MatrixXd(m, n), Eigen::VectorXd(m)};
  for (Eigen::Index k = 0; k < data.A.size(); ++k)
    data.A.data()[k] = get_le<double>(in);
  for (Eigen::Index i = 0; i < m; ++i)
    data.b[i] = get_le<double>(in);
  if (in.peek() != std::char_traits<char>::eof())
    throw io_error("instance file has trailing bytes");
  return data;
}

void save_instance_csv(const ProblemInstance &p, const std::string &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw io_error("cannot open '" + path + "' for writing");
  out.precision(17);
  out << p.rows() << ',' << p.cols() << '\n';
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j)
      out << p.A()(i, j) << ',';
    out << p.b()[i] << '\n';
  }
  if (!out)
    throw io_error("write to '" + path + "' failed");
}

LeastSquaresData load_instance_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw io_error("cannot open '" + path + "'");
  std::string line;
  long long m = 0, n = 0;
  char comma = 0;
  if (!std::getline(in, line))
    throw io_error("instance CSV is empty");
  {
    std::istringstream header(line);
    if (!(header >> m >> comma >> n) || comma != ',' || m <= 0 || n <= 0)
      throw io_error("instance CSV header must be 'm,n' with positive sizes");
  }
  LeastSquaresData data{Eigen::MatrixXd(m, n), Eigen::VectorXd(m)};
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      throw io_error("instance CSV has too few rows");
    std::istringstream row(line);
    std::string cell;
    for (long long j = 0; j <= n; ++j) {
      if (!std::getline(row, cell, ','))
        throw io_error("instance CSV row " + std::to_string(i + 1) +
                       " has too few columns");
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(cell, &used);
        if (used != cell.size() && cell.find_first_not_of(" \r", used) !=
                                       std::string::npos)
          throw std::invalid_argument(cell);
      } catch (const std::exception &) {
        throw io_error("instance CSV has a malformed number: '" + cell + "'");
      }
      if (j < n)
        data.A(i, j) = value;
      else
        data.b[i] = value;
    }
  }
  return data;
}

} // namespace irl1
