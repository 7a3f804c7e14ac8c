#include "uconf/timestamp.hpp"

#include <cstdio>

#include "uconf/errors.hpp"

namespace uconf {

namespace {

// Howard Hinnant's civil calendar conversions.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

class cursor {
  public:
    explicit cursor(std::string_view s) : s_(s) {}

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[pos_]; }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    int digits(std::size_t count) {
        int v = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (done() || s_[pos_] < '0' || s_[pos_] > '9') fail();
            v = v * 10 + (s_[pos_++] - '0');
        }
        return v;
    }

    [[noreturn]] void fail() const {
        throw parse_error("invalid ISO-8601 timestamp: '" + std::string(s_) + "'");
    }

  private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Timestamp parse_iso8601(std::string_view text) {
    cursor c(text);
    bool negative_year = c.accept('-');
    int year = c.digits(4);
    if (!c.accept('-')) c.fail();
    int month = c.digits(2);
    if (!c.accept('-')) c.fail();
    int day = c.digits(2);
    if (month < 1 || month > 12 || day < 1 || day > 31) c.fail();

    int hour = 0, minute = 0, second = 0, millis = 0;
    if (c.accept('T') || c.accept(' ')) {
        hour = c.digits(2);
        if (!c.accept(':')) c.fail();
        minute = c.digits(2);
        if (c.accept(':')) {
            second = c.digits(2);
            if (c.accept('.')) {
                // keep millisecond precision, ignore finer digits
                int scale = 100;
                bool any = false;
                while (!c.done() && c.peek() >= '0' && c.peek() <= '9') {
                    int dgt = c.digits(1);
                    millis += dgt * scale;
                    scale /= 10;
                    any = true;
                }
                if (!any) c.fail();
            }
        }
    }
    if (hour > 23 || minute > 59 || second > 60) c.fail();

    int offset_minutes = 0;
    if (c.accept('Z')) {
    } else if (c.peek() == '+' || c.peek() == '-') {
        int sign = c.peek() == '-' ? -1 : 1;
        c.accept(c.peek());
        int oh = c.digits(2);
        c.accept(':');
        int om = c.digits(2);
        offset_minutes = sign * (oh * 60 + om);
    }
    if (!c.done()) c.fail();

    std::int64_t y = negative_year ? -year : year;
    std::int64_t days = days_from_civil(y, static_cast<unsigned>(month), static_cast<unsigned>(day));
    std::int64_t ms = days * kMillisPerDay + ((hour * 60LL + minute - offset_minutes) * 60LL + second) * 1000LL + millis;
    return ms;
}

std::string format_iso8601(Timestamp t) {
    std::int64_t days = floor_div(t, kMillisPerDay);
    std::int64_t rem = t - days * kMillisPerDay;
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    int hour = static_cast<int>(rem / 3'600'000);
    int minute = static_cast<int>(rem / 60'000 % 60);
    int second = static_cast<int>(rem / 1000 % 60);
    int millis = static_cast<int>(rem % 1000);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02d:%02d:%02d.%03d+00:00", static_cast<long long>(y), m, d,
                  hour, minute, second, millis);
    return buf;
}

} // namespace uconf
