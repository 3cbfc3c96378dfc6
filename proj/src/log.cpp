#include "dcid/log.hpp"

#include <iostream>
#include <mutex>

namespace dcid::log {
namespace {

std::mutex& sink_mutex()
{
    static std::mutex m;
    return m;
}

void default_sink(Level level, const std::string& message)
{
    if (level < Level::warning) {
        return;
    }
    std::clog << (level == Level::warning ? "warning: " : "error: ") << message << '\n';
}

Sink& current_sink()
{
    static Sink sink = default_sink;
    return sink;
}

} // namespace

Sink set_sink(Sink sink)
{
    std::lock_guard lock(sink_mutex());
    Sink previous = std::move(current_sink());
    current_sink() = sink ? std::move(sink) : Sink(default_sink);
    return previous;
}

void write(Level level, const std::string& message)
{
    std::lock_guard lock(sink_mutex());
    current_sink()(level, message);
}

} // namespace dcid::log
