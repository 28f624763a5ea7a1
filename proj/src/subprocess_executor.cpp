#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "leveldiff/executors.hpp"

namespace leveldiff {

namespace {

constexpr std::string_view timing_tag = "LEVELDIFF_NS";

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (nl == std::string_view::npos) {
            break;
        }
        text.remove_prefix(nl + 1);
    }
    return lines;
}

bool is_executable(const std::filesystem::path &p)
{
    std::error_code ec;
    return std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

bool resolvable(const std::string &command)
{
    if (command.find('/') != std::string::npos) {
        return is_executable(command);
    }
    const char *path = std::getenv("PATH");
    if (path == nullptr) {
        return false;
    }
    std::string_view rest(path);
    while (true) {
        auto colon = rest.find(':');
        auto dir = rest.substr(0, colon);
        if (is_executable(std::filesystem::path(dir.empty() ? "." : std::string(dir)) / command)) {
            return true;
        }
        if (colon == std::string_view::npos) {
            return false;
        }
        rest.remove_prefix(colon + 1);
    }
}

void set_cloexec(int fd)
{
    ::fcntl(fd, F_SETFD, ::fcntl(fd, F_GETFD) | FD_CLOEXEC);
}

} // namespace

timing_parse parse_timing_output(std::string_view stdout_text)
{
    timing_parse result;
    for (auto line : split_lines(stdout_text)) {
        if (!line.starts_with(timing_tag)) {
            continue;
        }
        auto rest = line.substr(timing_tag.size());
        bool ok = rest.size() >= 2 && rest[0] == ' ';
        std::uint64_t value = 0;
        if (ok) {
            auto digits = rest.substr(1);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            ok = ec == std::errc{} && ptr == digits.data() + digits.size() && digits[0] != '+' &&
                 value <= static_cast<std::uint64_t>(std::numeric_limits<nanoseconds::rep>::max());
        }
        if (!ok) {
            result.malformed = true;
            result.duration.reset();
            return result;
        }
        result.duration = nanoseconds{static_cast<nanoseconds::rep>(value)};
    }
    return result;
}

std::vector<std::string> default_exception_patterns()
{
    return {
        R"((?:[A-Za-z_$][\w$]*\.)+[A-Za-z_$][\w$]*(?:Exception|Error)\b)",
        R"(\b[A-Z][\w$]*(?:Exception|Error)\b)",
        R"(SIG[A-Z]+ \(0x[0-9a-fA-F]+\))",
        R"(Internal Error \([^)]*\))",
    };
}

std::optional<std::string> extract_exception_signature(std::string_view stderr_text,
                                                       const std::vector<std::regex> &patterns)
{
    static const std::regex address(R"(0x[0-9a-fA-F]+)");
    static const std::regex digits(R"([0-9]+)");
    for (auto line : split_lines(stderr_text)) {
        const std::string s(line);
        for (const auto &pattern : patterns) {
            std::smatch m;
            if (std::regex_search(s, m, pattern)) {
                std::string sig = std::regex_replace(m.str(0), address, "");
                sig = std::regex_replace(sig, digits, "");
                return sig;
            }
        }
    }
    return std::nullopt;
}

process_output run_process(const std::vector<std::string> &argv, const std::string &working_dir,
                           nanoseconds timeout, nanoseconds kill_grace)
{
    using clock = std::chrono::steady_clock;
    process_output result;
    if (argv.empty()) {
        result.spawn_failed = true;
        return result;
    }

    std::array<int, 2> out_pipe{}, err_pipe{}, exec_pipe{};
    if (::pipe(out_pipe.data()) != 0 || ::pipe(err_pipe.data()) != 0 || ::pipe(exec_pipe.data()) != 0) {
        result.spawn_failed = true;
        return result;
    }
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1], exec_pipe[0], exec_pipe[1]}) {
        set_cloexec(fd);
    }

    std::vector<char *> c_argv;
    for (const auto &a : argv) {
        c_argv.push_back(const_cast<char *>(a.c_str()));
    }
    c_argv.push_back(nullptr);

    const auto start = clock::now();
    const pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1], exec_pipe[0], exec_pipe[1]}) {
            ::close(fd);
        }
        result.spawn_failed = true;
        return result;
    }
    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        int devnull = ::open("/dev/null", O_RDONLY);
        if (devnull >= 0) {
            ::dup2(devnull, STDIN_FILENO);
        }
        if (!working_dir.empty() && ::chdir(working_dir.c_str()) != 0) {
            int e = errno;
            (void)!::write(exec_pipe[1], &e, sizeof e);
            ::_exit(127);
        }
        ::execvp(c_argv[0], c_argv.data());
        int e = errno;
        (void)!::write(exec_pipe[1], &e, sizeof e);
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    ::close(out_pipe[1]);
    ::close(err_pipe[1]);
    ::close(exec_pipe[1]);

    int exec_errno = 0;
    if (::read(exec_pipe[0], &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno)) {
        result.spawn_failed = true;
    }
    ::close(exec_pipe[0]);

    const auto deadline = start + timeout;
    std::array<pollfd, 2> fds{{{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}}};
    std::array<std::string *, 2> sinks{&result.out, &result.err};
    int open_fds = 2;
    std::array<char, 4096> buf{};
    while (open_fds > 0) {
        const auto now = clock::now();
        if (now >= deadline) {
            result.timed_out = true;
            break;
        }
        const auto wait_ms = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1;
        int rc = ::poll(fds.data(), fds.size(), static_cast<int>(std::min<long long>(wait_ms, 1000)));
        if (rc < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (fds[i].fd < 0 || (fds[i].revents & (POLLIN | POLLHUP | POLLERR)) == 0) {
                continue;
            }
            ssize_t n = ::read(fds[i].fd, buf.data(), buf.size());
            if (n > 0) {
                sinks[i]->append(buf.data(), static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                ::close(fds[i].fd);
                fds[i].fd = -1;
                --open_fds;
            }
        }
    }

    int status = 0;
    if (!result.timed_out) {
        // Output closed; wait for exit within the remaining budget.
        while (true) {
            pid_t w = ::waitpid(pid, &status, WNOHANG);
            if (w == pid) {
                break;
            }
            if (clock::now() >= deadline) {
                result.timed_out = true;
                break;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(1));
        }
    }
    if (result.timed_out) {
        ::kill(-pid, SIGKILL);
        ::kill(pid, SIGKILL);
        const auto reap_deadline = clock::now() + kill_grace;
        while (::waitpid(pid, &status, WNOHANG) != pid && clock::now() < reap_deadline) {
            std::this_thread::sleep_for(std::chrono::milliseconds(1));
        }
    }
    for (auto &fd : fds) {
        if (fd.fd >= 0) {
            ::close(fd.fd);
        }
    }
    result.wall = std::chrono::duration_cast<nanoseconds>(clock::now() - start);
    if (!result.timed_out && WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (!result.timed_out && WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

subprocess_executor::subprocess_executor(subprocess_options options) : options_(std::move(options))
{
    for (const auto &p : options_.exception_patterns) {
        try {
            patterns_.emplace_back(p);
        } catch (const std::regex_error &e) {
            throw error(errc::config_error, "bad exception pattern '" + p + "': " + e.what());
        }
    }
}

void subprocess_executor::ensure_available(std::span<const program_candidate>,
                                           const configuration_pair &pair) const
{
    for (const auto *config : {&pair.baseline, &pair.subject}) {
        if (config->command_prefix.empty() || !resolvable(config->command_prefix.front())) {
            throw error(errc::executor_unavailable,
                        "runtime for configuration '" + config->id + "' cannot be launched");
        }
    }
}

execution_result subprocess_executor::execute(const program_candidate &program,
                                              const runtime_configuration &config,
                                              std::uint64_t iterations, std::size_t) const
{
    std::vector<std::string> argv = config.command_prefix;
    argv.insert(argv.end(), config.extra_flags.begin(), config.extra_flags.end());
    for (auto &token : render_run_spec(program.run_spec, iterations)) {
        argv.push_back(std::move(token));
    }

    const auto proc = run_process(argv, program.working_dir, program.timeout, options_.kill_grace);

    execution_result r;
    r.wall = proc.wall;
    r.exception_signature = extract_exception_signature(proc.err, patterns_);
    if (proc.spawn_failed) {
        r.status = exec_status::failed;
        r.diagnostic = "spawn failure: " + argv.front();
        return r;
    }
    if (proc.timed_out) {
        r.status = exec_status::timeout;
        r.duration = proc.wall;
        r.source = timing_source::wall_clock;
        r.diagnostic = "timeout";
        return r;
    }
    if (proc.exit_code != 0) {
        r.status = exec_status::failed;
        r.diagnostic = "exit status " + std::to_string(proc.exit_code);
        return r;
    }
    const auto timing = parse_timing_output(proc.out);
    if (timing.malformed) {
        r.status = exec_status::failed;
        r.diagnostic = "malformed timing line";
        return r;
    }
    if (timing.duration) {
        r.duration = *timing.duration;
        r.source = timing_source::self_reported;
    } else {
        r.duration = proc.wall;
        r.source = timing_source::wall_clock;
    }
    return r;
}

} // namespace leveldiff
