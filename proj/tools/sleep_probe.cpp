// Test workload: sleeps N * k microseconds and reports the elapsed time using
// the LEVELDIFF_NS protocol.
//
//   sleep_probe <N> <micros-per-iteration> [--fail] [--no-timing] [--garbage]

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <thread>

int main(int argc, char **argv)
{
    if (argc < 3) {
        std::cerr << "usage: sleep_probe <N> <micros-per-iteration> [--fail|--no-timing|--garbage]\n";
        return 64;
    }
    const auto n = std::strtoull(argv[1], nullptr, 10);
    const auto per = std::strtod(argv[2], nullptr);
    bool fail = false, timing = true, garbage = false;
    for (int i = 3; i < argc; ++i) {
        fail |= std::strcmp(argv[i], "--fail") == 0;
        timing &= std::strcmp(argv[i], "--no-timing") != 0;
        garbage |= std::strcmp(argv[i], "--garbage") == 0;
    }

    const auto start = std::chrono::steady_clock::now();
    std::this_thread::sleep_for(std::chrono::duration<double, std::micro>(static_cast<double>(n) * per));
    const auto elapsed = std::chrono::steady_clock::now() - start;

    if (fail) {
        std::cerr << "Exception in thread \"main\" java.lang.ArithmeticException: / by zero\n"
                  << "\tat Test.main(Test.java:42)\n";
        return 1;
    }
    if (garbage) {
        std::cout << "LEVELDIFF_NS twelve\n";
    } else if (timing) {
        std::cout << "warmup done\n";
        std::cout << "LEVELDIFF_NS " << std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count()
                  << '\n';
    }
    return 0;
}
