#include "synthaudit/generators/external.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "synthaudit/error.hpp"
#include "synthaudit/tabular/csv.hpp"

namespace synthaudit::generators {

namespace fs = std::filesystem;

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out.push_back(c);
    }
    return out + "'";
}

std::string read_tail(const fs::path& path, std::size_t max_bytes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    if (s.size() > max_bytes) s = "..." + s.substr(s.size() - max_bytes);
    return s;
}

/// mkdtemp-backed scratch directory, removed on destruction unless kept.
class ScratchDir {
public:
    ScratchDir(const fs::path& root, bool keep) : keep_(keep) {
        const fs::path base = root.empty() ? fs::temp_directory_path() : root;
        fs::create_directories(base);
        std::string templ = (base / "synthaudit-XXXXXX").string();
        if (!::mkdtemp(templ.data()))
            throw GeneratorError(GeneratorError::Kind::spawn_failure,
                                 "cannot create adapter working directory under " + base.string() + ": " +
                                     std::strerror(errno));
        path_ = templ;
    }
    ~ScratchDir() {
        if (keep_) return;
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
    const fs::path& path() const noexcept { return path_; }

private:
    fs::path path_;
    bool keep_;
};

}  // namespace

std::string expand_command(const std::string& command_template, const std::map<std::string, std::string>& values) {
    std::string out;
    bool saw_out = false;
    for (std::size_t i = 0; i < command_template.size();) {
        const char c = command_template[i];
        if (c != '{') {
            out.push_back(c);
            ++i;
            continue;
        }
        const auto close = command_template.find('}', i);
        if (close == std::string::npos) throw ValidationError("adapter command has an unterminated '{'");
        const std::string key = command_template.substr(i + 1, close - i - 1);
        auto it = values.find(key);
        if (it == values.end())
            throw ValidationError("adapter command uses unknown placeholder {" + key +
                                  "}; known: {train} {schema} {out} {size} {seed}");
        saw_out |= key == "out";
        out += it->second;
        i = close + 1;
    }
    if (!saw_out) throw ValidationError("adapter command must contain the {out} placeholder");
    return out;
}

ProcessResult run_shell(const std::string& command, const fs::path& cwd, const fs::path& stdout_path,
                        const fs::path& stderr_path, std::chrono::milliseconds timeout) {
    // Everything the child touches is prepared before fork().
    const std::string cwd_s = cwd.string();
    const std::string out_s = stdout_path.string();
    const std::string err_s = stderr_path.string();

    const pid_t pid = ::fork();
    if (pid < 0) throw GeneratorError(GeneratorError::Kind::spawn_failure, std::string("fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        ::setpgid(0, 0);
        if (::chdir(cwd_s.c_str()) != 0) ::_exit(126);
        const int in_fd = ::open("/dev/null", O_RDONLY);
        const int out_fd = ::open(out_s.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        const int err_fd = ::open(err_s.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (in_fd < 0 || out_fd < 0 || err_fd < 0) ::_exit(126);
        ::dup2(in_fd, STDIN_FILENO);
        ::dup2(out_fd, STDOUT_FILENO);
        ::dup2(err_fd, STDERR_FILENO);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::setpgid(pid, pid);

    const auto deadline = std::chrono::steady_clock::now() + timeout;
    auto poll = std::chrono::milliseconds(1);
    for (;;) {
        int status = 0;
        const pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            ProcessResult res;
            if (WIFEXITED(status))
                res.exit_code = WEXITSTATUS(status);
            else if (WIFSIGNALED(status))
                res.exit_code = 128 + WTERMSIG(status);
            return res;
        }
        if (r < 0 && errno != EINTR)
            throw GeneratorError(GeneratorError::Kind::spawn_failure, std::string("waitpid failed: ") + std::strerror(errno));
        if (std::chrono::steady_clock::now() >= deadline) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            ::waitpid(pid, &status, 0);
            return ProcessResult{-1, true};
        }
        std::this_thread::sleep_for(poll);
        poll = std::min(poll * 2, std::chrono::milliseconds(50));
    }
}

tabular::Table run_external(const External& spec, const tabular::Table& train, std::size_t size, std::uint64_t seed) {
    ScratchDir dir(spec.workdir_root, spec.keep_workdir);
    const fs::path train_path = dir.path() / "train.csv";
    const fs::path schema_path = dir.path() / "schema.json";
    const fs::path out_path = dir.path() / "out.csv";
    tabular::write_csv(train, train_path);
    tabular::save_schema(train.schema(), schema_path);

    const std::string command = expand_command(spec.command_template, {{"train", shell_quote(train_path.string())},
                                                                       {"schema", shell_quote(schema_path.string())},
                                                                       {"out", shell_quote(out_path.string())},
                                                                       {"size", std::to_string(size)},
                                                                       {"seed", std::to_string(seed)}});
    const fs::path stderr_path = dir.path() / "adapter.stderr";
    const ProcessResult res = run_shell(command, dir.path(), dir.path() / "adapter.stdout", stderr_path, spec.timeout);
    const std::string tail = read_tail(stderr_path, 2000);

    if (res.timed_out)
        throw GeneratorError(GeneratorError::Kind::timeout,
                             "adapter contract violated (finish within the timeout): killed after " +
                                 std::to_string(spec.timeout.count()) + " s",
                             -1, tail);
    if (res.exit_code != 0)
        throw GeneratorError(GeneratorError::Kind::nonzero_exit,
                             "adapter contract violated (exit status 0): adapter exited with status " +
                                 std::to_string(res.exit_code) + (tail.empty() ? "" : "; stderr: " + tail),
                             res.exit_code, tail);
    if (!fs::exists(out_path))
        throw GeneratorError(GeneratorError::Kind::invalid_output,
                             "adapter contract violated (write {out}): no output file was written", 0, tail);
    tabular::Table out = [&] {
        try {
            return tabular::load_table(out_path, train.schema(), tabular::kSyntheticIdBase);
        } catch (const ValidationError& e) {
            throw GeneratorError(GeneratorError::Kind::invalid_output,
                                 std::string("adapter contract violated (schema-conforming rows): ") + e.what(), 0, tail);
        }
    }();
    if (out.num_rows() != size)
        throw GeneratorError(GeneratorError::Kind::invalid_output,
                             "adapter contract violated (exactly {size} rows): expected " + std::to_string(size) +
                                 " rows, got " + std::to_string(out.num_rows()),
                             0, tail);
    return out;
}

}  // namespace synthaudit::generators
