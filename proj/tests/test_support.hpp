#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include <unistd.h>

namespace emgeo::test {

inline std::filesystem::path data_dir()
{
    return std::filesystem::path(EMGEO_DATA_DIR);
}

inline std::filesystem::path sample_csv() { return data_dir() / "emdat_sample.csv"; }
inline std::filesystem::path sample_csv_with_metadata()
{
    return data_dir() / "emdat_sample_with_metadata.csv";
}
inline std::filesystem::path sample_fixtures() { return data_dir() / "fixtures/geonames_sample.json"; }
inline std::filesystem::path california_geojson() { return data_dir() / "regions/california.geojson"; }

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("emgeo-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write_file(std::string_view name, std::string_view content) const
    {
        auto file = path_ / name;
        std::ofstream out(file, std::ios::binary);
        out << content;
        return file;
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace emgeo::test
