#pragma once

#include <string>

namespace channeldance::edge {

// Component delays of the edge forwarding path, all in microseconds, plus
// the serial interface rates. Chain values exclude the per-byte interface
// transfer time, which forwarding_delay adds from the payload size.
struct LatencyModel {
  double ble_rx_chain_us = 2037.0;
  double controller_forward_us = 13.0;
  double ask_tx_chain_us = 2197.0;
  double tag_decode_us = 1300.0;     // measured on the tag
  double clock_reconfig_us = 13.0;   // measured on the tag
  double uart_baud = 1'000'000.0;
  double spi_hz = 4'000'000.0;

  // MCU controller with high-speed ports: 20 bytes forward in 5800 us.
  static LatencyModel mcu();
  // Laptop controller: slow port forwarding and common-rate interfaces.
  static LatencyModel laptop();
};

// 8N1 framing: 10 bits per byte on the wire. Throws on a non-positive rate.
double uart_time_us(int bytes, double baud);
double spi_time_us(int bytes, double clock_hz);

struct DelayBreakdown {
  double ble_rx_chain_us;
  double uart_us;
  double controller_forward_us;
  double ask_tx_chain_us;
  double spi_us;
  double tag_decode_us;
  double clock_reconfig_us;

  double total_us() const {
    return ble_rx_chain_us + uart_us + controller_forward_us + ask_tx_chain_us +
           spi_us + tag_decode_us + clock_reconfig_us;
  }
};

// End-to-end delay from sniffed packet to reconfigured tag clock for a
// payload of the given size; the components sum exactly to the total.
DelayBreakdown forwarding_delay(const LatencyModel& model, int payload_bytes);

// Packet-length-modulation downlink for comparison: one symbol_bits-sized
// chunk per excitation interval.
double plm_delay_ms(int payload_bytes, double packet_interval_ms, int symbol_bits);

}  // namespace channeldance::edge
