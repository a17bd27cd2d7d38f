#include "dbar/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace dbar {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "payload is written in native order and tagged LE");

namespace {

void write_payload(std::ofstream& os, const std::vector<cplx>& values) {
    std::vector<double> buf(values.size() * 2);
    for (size_t i = 0; i < values.size(); ++i) {
        buf[2 * i] = values[i].real();
        buf[2 * i + 1] = values[i].imag();
    }
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(buf.size() * sizeof(double)));
}

std::vector<cplx> read_payload(std::ifstream& is, size_t count) {
    std::vector<double> buf(count * 2);
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (static_cast<size_t>(is.gcount()) != buf.size() * sizeof(double))
        throw IoError("field payload truncated");
    char probe;
    if (is.read(&probe, 1)) throw IoError("field payload has trailing bytes");
    std::vector<cplx> values(count);
    for (size_t i = 0; i < count; ++i) values[i] = cplx(buf[2 * i], buf[2 * i + 1]);
    if (!all_finite(values)) throw IoError("field payload contains non-finite values");
    return values;
}

}  // namespace

void write_field(const SpatialField& f, const std::string& path, const std::string& kind) {
    if (!all_finite(f.values)) throw IoError("write_field: non-finite values");
    json hdr = {{"kind", kind},
                {"n", f.grid.n},
                {"center_re", f.grid.center.real()},
                {"center_im", f.grid.center.imag()},
                {"half_width", f.grid.half_width},
                {"endian", "LE"},
                {"count", f.values.size()}};
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << hdr.dump() << "\n";
    write_payload(os, f.values);
    if (!os) throw IoError("short write: " + path);
}

SpatialField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line)) throw IoError("missing header line: " + path);
    json hdr;
    try {
        hdr = json::parse(line);
    } catch (const json::exception& e) {
        throw IoError("malformed header: " + std::string(e.what()));
    }
    if (!hdr.contains("n") || !hdr.contains("count") || !hdr.contains("half_width"))
        throw IoError("header misses required keys");
    if (hdr.value("endian", "LE") != "LE") throw IoError("unsupported endianness tag");

    SpatialGrid grid(cplx(hdr.value("center_re", 0.0), hdr.value("center_im", 0.0)),
                     hdr["half_width"].get<double>(), hdr["n"].get<int>());
    const size_t count = hdr["count"].get<size_t>();
    if (count != grid.size()) throw IoError("header count inconsistent with grid");
    SpatialField f(grid);
    f.values = read_payload(is, count);
    return f;
}

void write_potential(const Potential& v, const std::string& path) {
    json hdr = {{"kind", "Potential"},
                {"n", v.field.grid.n},
                {"center_re", v.field.grid.center.real()},
                {"center_im", v.field.grid.center.imag()},
                {"half_width", v.field.grid.half_width},
                {"support_radius", v.support_radius},
                {"support_center_re", v.support_center.real()},
                {"support_center_im", v.support_center.imag()},
                {"p", v.p},
                {"endian", "LE"},
                {"count", v.field.values.size()}};
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << hdr.dump() << "\n";
    write_payload(os, v.field.values);
}

Potential read_potential(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line)) throw IoError("missing header line: " + path);
    json hdr = json::parse(line);
    SpatialGrid grid(cplx(hdr.value("center_re", 0.0), hdr.value("center_im", 0.0)),
                     hdr["half_width"].get<double>(), hdr["n"].get<int>());
    Potential v;
    v.field = SpatialField(grid);
    v.field.values = read_payload(is, hdr["count"].get<size_t>());
    v.support_radius = hdr.value("support_radius", grid.half_width);
    v.support_center = cplx(hdr.value("support_center_re", 0.0),
                            hdr.value("support_center_im", 0.0));
    v.p = hdr.value("p", 2.0);
    for (auto& x : v.field.values)
        if (x.imag() != 0.0) throw IoError("potential payload has nonzero imaginary part");
    return v;
}

void write_complex_block(const std::string& header_json, const std::vector<cplx>& values,
                         const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << header_json << "\n";
    write_payload(os, values);
}

std::pair<std::string, std::vector<cplx>> read_complex_block(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line)) throw IoError("missing header line: " + path);
    json hdr = json::parse(line);
    const size_t count = hdr.at("count").get<size_t>();
    return {line, read_payload(is, count)};
}

}  // namespace dbar
