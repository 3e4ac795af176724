"""The pirrssi package.

Single-server private information retrieval with reusable private side
information (RSI) and single-use non-private side information (SSI).
There is one console script, :doc:`pir-rssi <cli>`.

"""
