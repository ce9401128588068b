"""
The single-producer single-consumer ring
========================================

A bounded FIFO that is safe with exactly one pushing thread and one
popping thread, and needs no lock.
"""

import threading

from relic.spsc_queue import SpscRing, TaskDescriptor

# capacity must be a power of two; 128 is the default
ring = SpscRing(8)
for i in range(8):
    ring.try_push(TaskDescriptor(print, i))

# a full ring refuses the push instead of blocking
print("push onto full ring:", ring.try_push(TaskDescriptor(print, 99)))
print("readable:", ring.read_available(), "writable:", ring.write_available())

# front() peeks, pop() consumes
print("front arg:", ring.front().arg)
ring.pop()
print("after one pop:", ring.read_available())

#%%
# Two threads. The producer spins while the ring is full, the consumer
# spins while it is empty. The popped sequence equals the pushed one.

n = 50_000
ring = SpscRing(128)
got = []


def producer():
    for i in range(n):
        while not ring.try_push(TaskDescriptor(None, i)):
            pass


t = threading.Thread(target=producer)
t.start()
while len(got) < n:
    if ring.read_available():
        got.append(ring.front().arg)
        ring.pop()
t.join()
print("in order:", got == list(range(n)))
